#include "lrho/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace lrho {

namespace {

bool is_const(const ExprPtr& e, Cplx c) {
    return e->kind == Expr::Kind::Const && e->value == c;
}
bool is_zero(const ExprPtr& e) { return is_const(e, Cplx(0, 0)); }

}  // namespace

ExprPtr make_const(Cplx c) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Const;
    e->value = c;
    return e;
}

ExprPtr make_var(Var v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Variable;
    e->var = v;
    return e;
}

ExprPtr make_sum(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    Cplx c(0, 0);
    for (auto& k : kids) {
        if (k->kind == Expr::Kind::Const) {
            c += k->value;
        } else if (k->kind == Expr::Kind::Sum) {
            for (auto& kk : k->kids) flat.push_back(kk);
        } else {
            flat.push_back(k);
        }
    }
    if (c != Cplx(0, 0) || flat.empty()) flat.push_back(make_const(c));
    if (flat.size() == 1) return flat[0];
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Sum;
    e->kids = std::move(flat);
    return e;
}

ExprPtr make_prod(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    Cplx c(1, 0);
    for (auto& k : kids) {
        if (is_zero(k)) return make_const(Cplx(0, 0));
        if (k->kind == Expr::Kind::Const) {
            c *= k->value;
        } else if (k->kind == Expr::Kind::Prod) {
            for (auto& kk : k->kids) flat.push_back(kk);
        } else {
            flat.push_back(k);
        }
    }
    if (c != Cplx(1, 0) || flat.empty()) flat.insert(flat.begin(), make_const(c));
    if (flat.size() == 1) return flat[0];
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Prod;
    e->kids = std::move(flat);
    return e;
}

ExprPtr make_pow(ExprPtr base, unsigned n) {
    if (n == 0) return make_const(Cplx(1, 0));
    if (n == 1) return base;
    if (base->kind == Expr::Kind::Const) return make_const(std::pow(base->value, n));
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->kid = std::move(base);
    e->exponent = n;
    return e;
}

ExprPtr make_conj(ExprPtr e) {
    if (e->kind == Expr::Kind::Const) return make_const(std::conj(e->value));
    if (e->kind == Expr::Kind::Variable) return make_var(conj_var(e->var));
    if (e->kind == Expr::Kind::Conj) return e->kid;
    auto n = std::make_shared<Expr>();
    n->kind = Expr::Kind::Conj;
    n->kid = std::move(e);
    return n;
}

ExprPtr make_neg(ExprPtr e) { return make_prod({make_const(Cplx(-1, 0)), std::move(e)}); }

Cplx eval_expr(const ExprPtr& e, Cplx z, Cplx w) {
    switch (e->kind) {
        case Expr::Kind::Const: return e->value;
        case Expr::Kind::Variable:
            switch (e->var) {
                case Var::Z: return z;
                case Var::Zb: return std::conj(z);
                case Var::W: return w;
                case Var::Wb: return std::conj(w);
            }
            return {};
        case Expr::Kind::Sum: {
            Cplx s(0, 0);
            for (auto& k : e->kids) s += eval_expr(k, z, w);
            return s;
        }
        case Expr::Kind::Prod: {
            Cplx p(1, 0);
            for (auto& k : e->kids) p *= eval_expr(k, z, w);
            return p;
        }
        case Expr::Kind::Pow: {
            Cplx b = eval_expr(e->kid, z, w);
            Cplx r(1, 0);
            for (unsigned i = 0; i < e->exponent; ++i) r *= b;
            return r;
        }
        case Expr::Kind::Conj: return std::conj(eval_expr(e->kid, z, w));
    }
    return {};
}

ExprPtr diff_expr(const ExprPtr& e, Var v) {
    switch (e->kind) {
        case Expr::Kind::Const: return make_const(Cplx(0, 0));
        case Expr::Kind::Variable:
            return make_const(e->var == v ? Cplx(1, 0) : Cplx(0, 0));
        case Expr::Kind::Sum: {
            std::vector<ExprPtr> parts;
            for (auto& k : e->kids) {
                auto d = diff_expr(k, v);
                if (!is_zero(d)) parts.push_back(d);
            }
            return make_sum(std::move(parts));
        }
        case Expr::Kind::Prod: {
            std::vector<ExprPtr> parts;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                auto d = diff_expr(e->kids[i], v);
                if (is_zero(d)) continue;
                std::vector<ExprPtr> term;
                for (std::size_t j = 0; j < e->kids.size(); ++j) {
                    term.push_back(j == i ? d : e->kids[j]);
                }
                parts.push_back(make_prod(std::move(term)));
            }
            return make_sum(std::move(parts));
        }
        case Expr::Kind::Pow: {
            auto d = diff_expr(e->kid, v);
            if (is_zero(d)) return d;
            return make_prod({make_const(Cplx(double(e->exponent), 0)),
                              make_pow(e->kid, e->exponent - 1), d});
        }
        case Expr::Kind::Conj:
            return make_conj(diff_expr(e->kid, conj_var(v)));
    }
    return make_const(Cplx(0, 0));
}

ExprPtr swap_z_zb(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Const: return e;
        case Expr::Kind::Variable:
            if (e->var == Var::Z) return make_var(Var::Zb);
            if (e->var == Var::Zb) return make_var(Var::Z);
            return e;
        case Expr::Kind::Sum: {
            std::vector<ExprPtr> kids;
            for (auto& k : e->kids) kids.push_back(swap_z_zb(k));
            return make_sum(std::move(kids));
        }
        case Expr::Kind::Prod: {
            std::vector<ExprPtr> kids;
            for (auto& k : e->kids) kids.push_back(swap_z_zb(k));
            return make_prod(std::move(kids));
        }
        case Expr::Kind::Pow: return make_pow(swap_z_zb(e->kid), e->exponent);
        case Expr::Kind::Conj: return make_conj(swap_z_zb(e->kid));
    }
    return e;
}

bool expr_is_analytic(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Const: return true;
        case Expr::Kind::Variable: return e->var == Var::Z || e->var == Var::W;
        case Expr::Kind::Sum:
        case Expr::Kind::Prod:
            for (auto& k : e->kids) {
                if (!expr_is_analytic(k)) return false;
            }
            return true;
        case Expr::Kind::Pow: return expr_is_analytic(e->kid);
        case Expr::Kind::Conj: return false;
    }
    return false;
}

std::string expr_to_string(const ExprPtr& e) {
    std::ostringstream os;
    switch (e->kind) {
        case Expr::Kind::Const: {
            const Cplx c = e->value;
            if (c.imag() == 0.0) {
                os << c.real();
            } else {
                os << "(" << c.real() << " + " << c.imag() << "*i)";
            }
            break;
        }
        case Expr::Kind::Variable:
            os << (e->var == Var::Z ? "z" : e->var == Var::Zb ? "zb"
                                        : e->var == Var::W    ? "w"
                                                              : "wb");
            break;
        case Expr::Kind::Sum: {
            os << "(";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i) os << " + ";
                os << expr_to_string(e->kids[i]);
            }
            os << ")";
            break;
        }
        case Expr::Kind::Prod: {
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i) os << "*";
                os << expr_to_string(e->kids[i]);
            }
            break;
        }
        case Expr::Kind::Pow:
            os << expr_to_string(e->kid) << "^" << e->exponent;
            break;
        case Expr::Kind::Conj:
            os << "conj(" << expr_to_string(e->kid) << ")";
            break;
    }
    return os.str();
}

CompiledExpr::CompiledExpr(const ExprPtr& e) {
    compile(e);
    // Conservative stack bound: every instruction pushes at most one value.
    stack_need_ = static_cast<unsigned>(ops_.size()) + 1;
}

void CompiledExpr::compile(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Const: ops_.push_back({Op::Const, 0, e->value}); break;
        case Expr::Kind::Variable:
            switch (e->var) {
                case Var::Z: ops_.push_back({Op::Z, 0, {}}); break;
                case Var::Zb: ops_.push_back({Op::Zb, 0, {}}); break;
                case Var::W: ops_.push_back({Op::W, 0, {}}); break;
                case Var::Wb: ops_.push_back({Op::Wb, 0, {}}); break;
            }
            break;
        case Expr::Kind::Sum:
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                compile(e->kids[i]);
                if (i) ops_.push_back({Op::Add, 0, {}});
            }
            break;
        case Expr::Kind::Prod:
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                compile(e->kids[i]);
                if (i) ops_.push_back({Op::Mul, 0, {}});
            }
            break;
        case Expr::Kind::Pow:
            compile(e->kid);
            ops_.push_back({Op::Pow, e->exponent, {}});
            break;
        case Expr::Kind::Conj:
            compile(e->kid);
            ops_.push_back({Op::Conj, 0, {}});
            break;
    }
}

Cplx CompiledExpr::eval(Cplx z, Cplx w) const {
    // Fixed-width local stack; expressions here are desk-sized.
    Cplx stack[256];
    Cplx* heap = nullptr;
    Cplx* sp = stack;
    std::vector<Cplx> big;
    if (stack_need_ > 256) {
        big.resize(stack_need_);
        heap = big.data();
        sp = heap;
    }
    Cplx* top = sp;
    const Cplx zb = std::conj(z), wb = std::conj(w);
    for (const auto& ins : ops_) {
        switch (ins.op) {
            case Op::Const: *top++ = ins.c; break;
            case Op::Z: *top++ = z; break;
            case Op::Zb: *top++ = zb; break;
            case Op::W: *top++ = w; break;
            case Op::Wb: *top++ = wb; break;
            case Op::Add: top[-2] += top[-1]; --top; break;
            case Op::Mul: top[-2] *= top[-1]; --top; break;
            case Op::Pow: {
                Cplx b = top[-1], r(1, 0);
                for (unsigned i = 0; i < ins.arg; ++i) r *= b;
                top[-1] = r;
                break;
            }
            case Op::Conj: top[-1] = std::conj(top[-1]); break;
        }
    }
    return top == sp ? Cplx(0, 0) : top[-1];
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& src) : s_(src) {}

    ExprPtr parse() {
        skip_ws();
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("end of input, '+', '-', '*', or '^'");
        return e;
    }

  private:
    const std::string& s_;
    std::size_t pos_{0};

    [[noreturn]] void fail(const std::string& expected) {
        std::ostringstream os;
        os << "parse error at position " << pos_ << ": expected " << expected;
        if (pos_ < s_.size()) {
            os << ", found '" << s_[pos_] << "'";
        } else {
            os << ", found end of input";
        }
        throw ParseError(pos_, expected, os.str());
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(what);
    }

    bool accept_word(const char* word) {
        skip_ws();
        std::size_t n = 0;
        while (word[n]) ++n;
        if (s_.compare(pos_, n, word) != 0) return false;
        // A word atom must not continue into a longer identifier.
        const std::size_t end = pos_ + n;
        if (end < s_.size() &&
            (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) {
            return false;
        }
        pos_ = end;
        return true;
    }

    ExprPtr expr() {
        std::vector<ExprPtr> parts;
        bool neg = accept('-');
        ExprPtr t = term();
        parts.push_back(neg ? make_neg(t) : t);
        for (;;) {
            if (accept('+')) {
                parts.push_back(term());
            } else if (accept('-')) {
                parts.push_back(make_neg(term()));
            } else {
                break;
            }
        }
        return make_sum(std::move(parts));
    }

    ExprPtr term() {
        std::vector<ExprPtr> parts{factor()};
        while (accept('*')) parts.push_back(factor());
        return make_prod(std::move(parts));
    }

    ExprPtr factor() {
        ExprPtr a = atom();
        if (accept('^')) {
            return make_pow(a, uint_lit());
        }
        return a;
    }

    unsigned uint_lit() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            fail("unsigned integer exponent");
        }
        unsigned v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + unsigned(s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    ExprPtr number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ == start) fail("number");
        // Optional exponent part, e.g. 1.5e-3.
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
            if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                ++p;
                while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
                pos_ = p;
            }
        }
        return make_const(Cplx(std::stod(s_.substr(start, pos_ - start)), 0));
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) {
            fail("'z', 'zb', 'w', 'wb', 'i', number, '(', 'conj(', or 'abs2('");
        }
        if (accept_word("conj")) {
            expect('(', "'(' after conj");
            ExprPtr e = expr();
            expect(')', "')'");
            return make_conj(e);
        }
        if (accept_word("abs2")) {
            expect('(', "'(' after abs2");
            ExprPtr e = expr();
            expect(')', "')'");
            return make_prod({e, make_conj(e)});
        }
        if (accept_word("zb")) return make_var(Var::Zb);
        if (accept_word("wb")) return make_var(Var::Wb);
        if (accept_word("z")) return make_var(Var::Z);
        if (accept_word("w")) return make_var(Var::W);
        if (accept_word("i")) return make_const(Cplx(0, 1));
        if (accept('(')) {
            ExprPtr e = expr();
            expect(')', "')'");
            return e;
        }
        const char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
        fail("'z', 'zb', 'w', 'wb', 'i', number, '(', 'conj(', or 'abs2('");
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& src) { return Parser(src).parse(); }

}  // namespace lrho
