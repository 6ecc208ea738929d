#include "enclose/objective.hpp"

#include <stdexcept>

namespace enclose {

namespace {

Interval ratio(double num, double den) { return Interval::point(num) / Interval::point(den); }

Interval unit() { return Interval::point(1.0); }

// x / sqrt(s) where s >= x^2, so the exact quotient lies in [-1, 1].
Interval normalized(Interval x, Interval root_s)
{
    const auto q = intersect(x / root_s, Interval::unchecked(-1.0, 1.0));
    return q ? *q : Interval::unchecked(-1.0, 1.0);
}

// out[t] = prod_{j != dims[t]} rows[j][k], using prefix/suffix products.
void products_excluding(const FeatureRows& rows, std::size_t k, std::span<const std::size_t> dims,
                        std::span<Interval> out)
{
    thread_local std::vector<Interval> prefix;
    thread_local std::vector<Interval> suffix;
    const std::size_t n = rows.size();
    prefix.resize(n + 1);
    suffix.resize(n + 1);
    prefix[0] = unit();
    for (std::size_t j = 0; j < n; ++j) {
        prefix[j + 1] = prefix[j] * rows[j][k];
    }
    suffix[n] = unit();
    for (std::size_t j = n; j-- > 0;) {
        suffix[j] = rows[j][k] * suffix[j + 1];
    }
    for (std::size_t t = 0; t < dims.size(); ++t) {
        out[t] = prefix[dims[t]] * suffix[dims[t] + 1];
    }
}

Interval sum_feature(const FeatureRows& rows, std::size_t k)
{
    Interval acc;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        acc += rows[i][k];
    }
    return acc;
}

Interval product_feature(const FeatureRows& rows, std::size_t k)
{
    Interval acc = unit();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        acc *= rows[i][k];
    }
    return acc;
}

ObjectiveSpec make_spec(std::string name, std::size_t n, Interval bounds, Interval minimizer, Interval minimum)
{
    ObjectiveSpec s;
    s.name = std::move(name);
    s.dimension = n;
    s.domain = Box::uniform(n, bounds);
    s.minimizer = Box::uniform(n, minimizer);
    s.known_minimum = minimum;
    return s;
}

Interval pt(double x) { return Interval::point(x); }

// -20 exp(-0.02 sqrt(S1/n)) - exp(S2/n) + 20 + e
class Ackley final : public Objective {
public:
    explicit Ackley(std::size_t n)
        : Objective(make_spec("ackley", n, {-35.0, 40.0}, pt(0.0), pt(0.0))),
          n_(pt(static_cast<double>(n))),
          root_n_(sqrt(n_)),
          two_pi_(2.0 * pi()),
          decay_(ratio(1.0, 50.0)),
          radial_coef_(ratio(2.0, 5.0)),
          two_pi_over_n_(two_pi_ / n_)
    {
    }

    std::size_t feature_width() const noexcept override { return 4; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval arg = two_pi_ * x;
        out[0] = sqr(x);
        out[1] = cos(arg);
        out[2] = x;
        out[3] = sin(arg);
    }

    Interval combine(const FeatureRows& rows) const override
    {
        const Interval s1 = sum_feature(rows, 0);
        const Interval s2 = sum_feature(rows, 1);
        const Interval q = sqrt(s1 / n_);
        return -20.0 * exp(-(decay_ * q)) - exp(s2 / n_) + 20.0 + constant(Constant::e);
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        const Interval s1 = sum_feature(rows, 0);
        const Interval s2 = sum_feature(rows, 1);
        const Interval root_s1 = sqrt(s1);
        const Interval radial = radial_coef_ * exp(-(decay_ * sqrt(s1 / n_))) / root_n_;
        const Interval angular = two_pi_over_n_ * exp(s2 / n_);
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const Interval* r = rows[dims[t]];
            out[t] = radial * normalized(r[2], root_s1) + angular * r[3];
        }
    }

private:
    Interval n_, root_n_, two_pi_, decay_, radial_coef_, two_pi_over_n_;
};

// 0.1 S - cos(5 sqrt(S)), S = sum (x_i - 5)^2
class Belegundu final : public Objective {
public:
    explicit Belegundu(std::size_t n)
        : Objective(make_spec("belegundu", n, {-10.0, 11.0}, pt(5.0), pt(-1.0))), tenth_(ratio(1.0, 10.0)),
          fifth_(ratio(1.0, 5.0))
    {
    }

    std::size_t feature_width() const noexcept override { return 2; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval d = x - 5.0;
        out[0] = sqr(d);
        out[1] = d;
    }

    Interval combine(const FeatureRows& rows) const override
    {
        const Interval s = sum_feature(rows, 0);
        return tenth_ * s - cos(5.0 * sqrt(s));
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        const Interval s = sum_feature(rows, 0);
        const Interval root_s = sqrt(s);
        const Interval wave = 5.0 * sin(5.0 * root_s);
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const Interval* r = rows[dims[t]];
            out[t] = fifth_ * r[1] + wave * normalized(r[1], root_s);
        }
    }

private:
    Interval tenth_, fifth_;
};

// sum (x_i^2 - 0.1 cos(5 pi x_i))
class Breiman final : public Objective {
public:
    explicit Breiman(std::size_t n)
        : Objective(make_spec("breiman", n, {-1.0, 2.0}, pt(0.0), ratio(-1.0, 10.0) * static_cast<double>(n))),
          tenth_(ratio(1.0, 10.0)), five_pi_(5.0 * pi()), half_pi_(pi() / 2.0)
    {
    }

    std::size_t feature_width() const noexcept override { return 2; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval arg = five_pi_ * x;
        out[0] = sqr(x) - tenth_ * cos(arg);
        out[1] = half_pi_ * sin(arg) + 2.0 * x;
    }

    Interval combine(const FeatureRows& rows) const override { return sum_feature(rows, 0); }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        for (std::size_t t = 0; t < dims.size(); ++t) {
            out[t] = rows[dims[t]][1];
        }
    }

private:
    Interval tenth_, five_pi_, half_pi_;
};

// 1 + sum [8 sin^2(7u^2) + 6 sin^2(14u^2) + u^2], u = x_i - 0.9
class Fu final : public Objective {
public:
    explicit Fu(std::size_t n)
        : Objective(make_spec("fu", n, {-10.0, 10.0}, ratio(9.0, 10.0), pt(1.0))), shift_(ratio(9.0, 10.0))
    {
    }

    std::size_t feature_width() const noexcept override { return 2; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval u = x - shift_;
        const Interval u2 = sqr(u);
        out[0] = 8.0 * sqr(sin(7.0 * u2)) + 6.0 * sqr(sin(14.0 * u2)) + u2;
        out[1] = u * (112.0 * sin(14.0 * u2) + 168.0 * sin(28.0 * u2) + 2.0);
    }

    Interval combine(const FeatureRows& rows) const override { return 1.0 + sum_feature(rows, 0); }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        for (std::size_t t = 0; t < dims.size(); ++t) {
            out[t] = rows[dims[t]][1];
        }
    }

private:
    Interval shift_;
};

// 1 + sum x_i^2 / 4000 - prod cos(x_i / sqrt(i))
class Griewank final : public Objective {
public:
    explicit Griewank(std::size_t n) : Objective(make_spec("griewank", n, {-100.0, 110.0}, pt(0.0), pt(0.0)))
    {
        inv_root_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            inv_root_.push_back(reciprocal(sqrt(pt(static_cast<double>(i + 1)))));
        }
    }

    std::size_t feature_width() const noexcept override { return 4; }

    void features(std::size_t i, Interval x, Interval* out) const override
    {
        const Interval arg = x * inv_root_[i];
        out[0] = sqr(x) / 4000.0;
        out[1] = cos(arg);
        out[2] = x / 2000.0;
        out[3] = sin(arg) * inv_root_[i];
    }

    Interval combine(const FeatureRows& rows) const override
    {
        return 1.0 + sum_feature(rows, 0) - product_feature(rows, 1);
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        products_excluding(rows, 1, dims, out);
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const Interval* r = rows[dims[t]];
            out[t] = r[2] + r[3] * out[t];
        }
    }

private:
    std::vector<Interval> inv_root_;
};

// (pi/n) {10 sin^2(pi y_1) + (y_n - 1)^2 + sum_{i<n} (y_i - 1)^2 (1 + 10 sin^2(pi y_{i+1}))}
// with y_i = 1 + (x_i - 1)/4.
class Levy final : public Objective {
public:
    enum Feature : std::size_t { sq_shift, wave, one_plus_wave, d_sq_shift, d_wave };

    explicit Levy(std::size_t n)
        : Objective(make_spec("levy", n, {-10.0, 10.0}, pt(1.0), pt(0.0))), scale_(pi() / static_cast<double>(n)),
          two_pi_(2.0 * pi()), d_wave_coef_(2.5 * pi())
    {
    }

    std::size_t feature_width() const noexcept override { return 5; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval shift = 0.25 * (x - 1.0);
        const Interval y = 1.0 + shift;
        out[sq_shift] = sqr(shift);
        out[wave] = 10.0 * sqr(sin(pi() * y));
        out[one_plus_wave] = 1.0 + out[wave];
        out[d_sq_shift] = 0.125 * (x - 1.0);
        out[d_wave] = d_wave_coef_ * sin(two_pi_ * y);
    }

    Interval combine(const FeatureRows& rows) const override
    {
        const std::size_t n = rows.size();
        Interval acc = rows[0][wave] + rows[n - 1][sq_shift];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            acc += rows[i][sq_shift] * rows[i + 1][one_plus_wave];
        }
        return scale_ * acc;
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        const std::size_t n = rows.size();
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const std::size_t i = dims[t];
            Interval d;
            if (i == 0) {
                d += rows[0][d_wave];
            }
            if (i == n - 1) {
                d += rows[i][d_sq_shift];
            }
            if (i + 1 < n) {
                d += rows[i][d_sq_shift] * rows[i + 1][one_plus_wave];
            }
            if (i > 0) {
                d += rows[i - 1][sq_shift] * rows[i][d_wave];
            }
            out[t] = scale_ * d;
        }
    }

private:
    Interval scale_, two_pi_, d_wave_coef_;
};

// 10n + sum [x_i^2 - 10 cos(2 pi x_i)]
class Rastrigin final : public Objective {
public:
    explicit Rastrigin(std::size_t n)
        : Objective(make_spec("rastrigin", n, {-5.5, 6.0}, pt(0.0), pt(0.0))), two_pi_(2.0 * pi()),
          twenty_pi_(20.0 * pi()), offset_(pt(10.0 * static_cast<double>(n)))
    {
    }

    std::size_t feature_width() const noexcept override { return 2; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval arg = two_pi_ * x;
        out[0] = sqr(x) - 10.0 * cos(arg);
        out[1] = 2.0 * x + twenty_pi_ * sin(arg);
    }

    Interval combine(const FeatureRows& rows) const override { return offset_ + sum_feature(rows, 0); }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        for (std::size_t t = 0; t < dims.size(); ++t) {
            out[t] = rows[dims[t]][1];
        }
    }

private:
    Interval two_pi_, twenty_pi_, offset_;
};

// 1 - cos(2 pi r) + 0.1 r, r = sqrt(sum x_i^2)
class Salomon final : public Objective {
public:
    explicit Salomon(std::size_t n)
        : Objective(make_spec("salomon", n, {-100.0, 110.0}, pt(0.0), pt(0.0))), two_pi_(2.0 * pi()),
          tenth_(ratio(1.0, 10.0))
    {
    }

    std::size_t feature_width() const noexcept override { return 2; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        out[0] = sqr(x);
        out[1] = x;
    }

    Interval combine(const FeatureRows& rows) const override
    {
        const Interval r = sqrt(sum_feature(rows, 0));
        return 1.0 - cos(two_pi_ * r) + tenth_ * r;
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        const Interval r = sqrt(sum_feature(rows, 0));
        const Interval slope = two_pi_ * sin(two_pi_ * r) + tenth_;
        for (std::size_t t = 0; t < dims.size(); ++t) {
            out[t] = slope * normalized(rows[dims[t]][1], r);
        }
    }

private:
    Interval two_pi_, tenth_;
};

// (1/(2n)) sum x_i^2 - 4n prod cos(x_i)
class Styblinski final : public Objective {
public:
    explicit Styblinski(std::size_t n)
        : Objective(make_spec("styblinski", n, {-10.0, 11.0}, pt(0.0), pt(-4.0 * static_cast<double>(n)))),
          n_(pt(static_cast<double>(n))), half_inv_n_(reciprocal(2.0 * n_)), four_n_(4.0 * n_)
    {
    }

    std::size_t feature_width() const noexcept override { return 4; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        out[0] = sqr(x);
        out[1] = cos(x);
        out[2] = four_n_ * sin(x);
        out[3] = x / n_;
    }

    Interval combine(const FeatureRows& rows) const override
    {
        return half_inv_n_ * sum_feature(rows, 0) - four_n_ * product_feature(rows, 1);
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        products_excluding(rows, 1, dims, out);
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const Interval* r = rows[dims[t]];
            out[t] = r[3] + r[2] * out[t];
        }
    }

private:
    Interval n_, half_inv_n_, four_n_;
};

// -2.5 prod sin(x_i - pi/6) - prod sin(5 (x_i - pi/6))
class Zabinsky final : public Objective {
public:
    explicit Zabinsky(std::size_t n)
        : Objective(make_spec("zabinsky", n, {0.0, pi().hi()}, 2.0 * pi() / 3.0, pt(-3.5))), shift_(pi() / 6.0)
    {
    }

    std::size_t feature_width() const noexcept override { return 4; }

    void features(std::size_t, Interval x, Interval* out) const override
    {
        const Interval v = x - shift_;
        const Interval w = 5.0 * v;
        out[0] = sin(v);
        out[1] = sin(w);
        out[2] = -2.5 * cos(v);
        out[3] = -5.0 * cos(w);
    }

    Interval combine(const FeatureRows& rows) const override
    {
        return -2.5 * product_feature(rows, 0) - product_feature(rows, 1);
    }

    void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<Interval> out) const override
    {
        thread_local std::vector<Interval> others;
        others.resize(dims.size());
        products_excluding(rows, 0, dims, out);
        products_excluding(rows, 1, dims, others);
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const Interval* r = rows[dims[t]];
            out[t] = r[2] * out[t] + r[3] * others[t];
        }
    }

private:
    Interval shift_;
};

} // namespace

Objective::Objective(ObjectiveSpec spec) : spec_(std::move(spec))
{
    if (spec_.dimension == 0) {
        throw std::invalid_argument("objective dimension must be positive");
    }
}

void Objective::check_dimension(std::size_t n) const
{
    if (n != spec_.dimension) {
        throw std::invalid_argument(spec_.name + ": expected dimension " + std::to_string(spec_.dimension) +
                                    ", got " + std::to_string(n));
    }
}

Interval Objective::eval(const Box& b) const
{
    check_dimension(b.dimension());
    const std::size_t w = feature_width();
    const std::size_t n = b.dimension();
    std::vector<Interval> feats(n * w);
    std::vector<const Interval*> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        features(i, b[i], &feats[i * w]);
        rows[i] = &feats[i * w];
    }
    return combine(FeatureRows(rows));
}

std::vector<Interval> Objective::gradient(const Box& b, std::span<const std::size_t> dims) const
{
    check_dimension(b.dimension());
    if (!spec_.differentiable) {
        throw std::logic_error(spec_.name + " has no first-order derivatives");
    }
    const std::size_t w = feature_width();
    const std::size_t n = b.dimension();
    for (std::size_t i : dims) {
        if (i >= n) {
            throw std::invalid_argument(spec_.name + ": gradient index out of range");
        }
    }
    std::vector<Interval> feats(n * w);
    std::vector<const Interval*> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        features(i, b[i], &feats[i * w]);
        rows[i] = &feats[i * w];
    }
    std::vector<Interval> out(dims.size());
    partials(FeatureRows(rows), dims, out);
    return out;
}

double Objective::eval_point_upper(std::span<const double> x) const
{
    check_dimension(x.size());
    if (!spec_.domain.contains(x)) {
        throw std::out_of_range(spec_.name + ": evaluation point outside the search domain");
    }
    return eval(Box::point(x)).hi();
}

std::unique_ptr<const Objective> make_objective(std::string_view name, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("objective dimension must be positive");
    }
    if (name == "ackley") return std::make_unique<Ackley>(n);
    if (name == "belegundu") return std::make_unique<Belegundu>(n);
    if (name == "breiman") return std::make_unique<Breiman>(n);
    if (name == "fu") return std::make_unique<Fu>(n);
    if (name == "griewank") return std::make_unique<Griewank>(n);
    if (name == "levy") return std::make_unique<Levy>(n);
    if (name == "rastrigin") return std::make_unique<Rastrigin>(n);
    if (name == "salomon") return std::make_unique<Salomon>(n);
    if (name == "styblinski") return std::make_unique<Styblinski>(n);
    if (name == "zabinsky") return std::make_unique<Zabinsky>(n);
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

std::vector<std::unique_ptr<const Objective>> catalog(std::size_t n)
{
    std::vector<std::unique_ptr<const Objective>> out;
    out.reserve(objective_names.size());
    for (auto name : objective_names) {
        out.push_back(make_objective(name, n));
    }
    return out;
}

} // namespace enclose
