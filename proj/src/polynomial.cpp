#include "dqi/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dqi/error.hpp"

namespace dqi {

Rational parse_rational(const std::string &text)
{
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

ExponentVector zero_exponent(std::size_t dim) { return ExponentVector(dim, 0); }

ExponentVector unit_exponent(std::size_t dim, std::size_t i)
{
    ExponentVector e(dim, 0);
    e.at(i) = 1;
    return e;
}

std::uint32_t total_degree(const ExponentVector &e)
{
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

namespace {

void exponents_of_degree(std::size_t dim, unsigned degree, std::size_t pos, ExponentVector &cur,
                         std::vector<ExponentVector> &out)
{
    if (pos + 1 == dim) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (unsigned a = degree + 1; a-- > 0;) {
        cur[pos] = a;
        exponents_of_degree(dim, degree - a, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<ExponentVector> exponents_up_to(std::size_t dim, unsigned max_degree, unsigned min_degree)
{
    std::vector<ExponentVector> out;
    if (dim == 0) {
        if (min_degree == 0)
            out.emplace_back();
        return out;
    }
    ExponentVector cur(dim, 0);
    for (unsigned d = min_degree; d <= max_degree; ++d)
        exponents_of_degree(dim, d, 0, cur, out);
    return out;
}

Polynomial::Polynomial(std::size_t dim) : dim_(dim) {}

Polynomial Polynomial::constant(std::size_t dim, const Rational &c)
{
    Polynomial p(dim);
    p.add_term(zero_exponent(dim), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t i)
{
    if (i >= dim)
        throw ArgumentError("variable index out of range");
    Polynomial p(dim);
    p.add_term(unit_exponent(dim, i), 1);
    return p;
}

Polynomial Polynomial::monomial(ExponentVector e, const Rational &c)
{
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Polynomial::degree() const
{
    int d = -1;
    for (const auto &[e, c] : terms_)
        d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
}

Rational Polynomial::coefficient(const ExponentVector &e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(zero_exponent(dim_)); }

void Polynomial::add_term(const ExponentVector &e, const Rational &c)
{
    if (e.size() != dim_)
        throw DimensionError("exponent vector length does not match polynomial dimension");
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rational Polynomial::evaluate(std::span<const Rational> point) const
{
    if (point.size() != dim_)
        throw DimensionError("evaluation point has wrong dimension");
    Rational sum = 0;
    for (const auto &[e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (e[i] == 0)
                continue;
            Rational pw;
            mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
            mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
            t *= pw;
        }
        sum += t;
    }
    return sum;
}

void Polynomial::check_dim(const Polynomial &other) const
{
    if (dim_ != other.dim_)
        throw DimensionError("polynomial dimensions differ (" + std::to_string(dim_) + " vs " +
                             std::to_string(other.dim_) + ")");
}

Polynomial &Polynomial::operator+=(const Polynomial &rhs)
{
    check_dim(rhs);
    for (const auto &[e, c] : rhs.terms_)
        add_term(e, c);
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &rhs)
{
    check_dim(rhs);
    for (const auto &[e, c] : rhs.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, coeff] : terms_)
        coeff *= c;
    return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    a.check_dim(b);
    Polynomial out(a.dim_);
    ExponentVector e(a.dim_);
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < a.dim_; ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial poly_mul(const Polynomial &p, const Polynomial &q) { return p * q; }

Polynomial partial(const Polynomial &p, std::size_t i)
{
    if (i >= p.dim())
        throw ArgumentError("partial: coordinate index " + std::to_string(i) + " out of range");
    Polynomial out(p.dim());
    for (const auto &[e, c] : p.terms()) {
        if (e[i] == 0)
            continue;
        ExponentVector f = e;
        --f[i];
        out.add_term(f, c * e[i]);
    }
    return out;
}

Polynomial partial(const Polynomial &p, const ExponentVector &alpha)
{
    if (alpha.size() != p.dim())
        throw DimensionError("partial: multi-index has wrong dimension");
    Polynomial out(p.dim());
    for (const auto &[e, c] : p.terms()) {
        Rational k = c;
        ExponentVector f = e;
        bool zero = false;
        for (std::size_t i = 0; i < e.size() && !zero; ++i) {
            if (alpha[i] > e[i]) {
                zero = true;
                break;
            }
            // falling factorial e!/(e-alpha)!
            for (std::uint32_t t = 0; t < alpha[i]; ++t)
                k *= e[i] - t;
            f[i] -= alpha[i];
        }
        if (!zero)
            out.add_term(f, k);
    }
    return out;
}

Polynomial pow(const Polynomial &p, unsigned k)
{
    Polynomial out = Polynomial::constant(p.dim(), 1);
    for (unsigned i = 0; i < k; ++i)
        out = out * p;
    return out;
}

Polynomial compose(const Polynomial &p, std::span<const Polynomial> values)
{
    if (values.size() != p.dim())
        throw DimensionError("compose: need one value per coordinate");
    if (values.empty())
        return p;
    const std::size_t target = values.front().dim();
    Polynomial out(target);
    for (const auto &[e, c] : p.terms()) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                t = t * pow(values[i], e[i]);
        out += t;
    }
    return out;
}

std::string to_string(const Polynomial &p, std::span<const std::string> names)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto &[e, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0)
                os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || total_degree(e) == 0) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (wrote)
                os << '*';
            if (i < names.size())
                os << names[i];
            else
                os << 'x' << i;
            if (e[i] > 1)
                os << '^' << e[i];
            wrote = true;
        }
    }
    return os.str();
}

namespace {

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, std::span<const std::string> names)
        : text_(text), names_(names)
    {
    }

    Polynomial parse()
    {
        Polynomial p = expression();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError("offset " + std::to_string(pos_), msg + " in \"" + std::string(text_) + "\"");
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char ch)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression()
    {
        Polynomial acc(names_.size());
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Polynomial t = term();
        acc += negate ? -t : t;
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    Polynomial term()
    {
        Polynomial acc = power();
        while (true) {
            if (accept('*')) {
                acc = acc * power();
            } else if (accept('/')) {
                Rational d = integer();
                if (d == 0)
                    fail("division by zero");
                acc *= Rational(1) / d;
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial power()
    {
        Polynomial base = atom();
        if (accept('^')) {
            Rational e = integer();
            if (e < 0 || e > 1000)
                fail("exponent out of range");
            base = pow(base, static_cast<unsigned>(e.get_num().get_ui()));
        }
        return base;
    }

    Rational integer()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        return Rational(mpz_class(std::string(text_.substr(start, pos_ - start))));
    }

    Polynomial atom()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Polynomial inner = expression();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (ch == '-') {
            ++pos_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(ch)))
            return Polynomial::constant(names_.size(), integer());
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            auto it = std::find(names_.begin(), names_.end(), name);
            if (it == names_.end()) {
                pos_ = start;
                fail("undeclared variable '" + std::string(name) + "'");
            }
            return Polynomial::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
        }
        fail("unexpected character '" + std::string(1, ch) + "'");
    }

    std::string_view text_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names)
{
    return PolynomialParser(text, names).parse();
}

} // namespace dqi
