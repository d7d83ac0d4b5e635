#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <hyperroots/blowup.hpp>
#include <hyperroots/error.hpp>
#include <hyperroots/hyperbolic.hpp>
#include <hyperroots/rellich.hpp>
#include <hyperroots/resultants.hpp>
#include <hyperroots/specfam.hpp>

namespace hyperroots
{

using json = nlohmann::ordered_json;

enum class document_kind { polynomial_family, matrix_family };

struct FamilyDocument {
    document_kind kind = document_kind::polynomial_family;
    std::vector<std::string> variables;
    // Degree of a polynomial family or size of a matrix family.
    int dimension = 0;
    // a_1..a_d for polynomial families.
    std::vector<Series> coefficients;
    Matrix<Series> entries;
    symmetry tag = symmetry::none;

    int num_vars() const
    {
        return static_cast<int>(variables.size());
    }

    MonicFamily family() const
    {
        if (kind != document_kind::polynomial_family) {
            raise(errc::invalid_argument, "command expects a polynomial_family document");
        }
        return MonicFamily(num_vars(), coefficients);
    }

    MatrixFamily matrix() const
    {
        if (kind != document_kind::matrix_family) {
            raise(errc::invalid_argument, "command expects a matrix_family document");
        }
        return MatrixFamily(num_vars(), entries, tag);
    }

    friend bool operator==(const FamilyDocument &, const FamilyDocument &) = default;
};

struct RunConfig {
    int order = 16;
    double tol = 1e-9;
    std::uint64_t seed = 20240601;
    int max_steps = -1;
    std::string format = "json";
    Region region;
    int grid = 9;
    int levels = 3;
    // lidskii: number of pairs and matrix size for random pairs.
    int count = 200;
    int size = 4;
    // diag/canonical: substitute x_to -> x_from * x_to first (1-based), 0 = off.
    int chart_from = 0;
    int chart_to = 0;
};

struct CommandResult {
    int exit_code = 0;
    std::string output;
};

inline const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names{"discriminants", "hyperbolic", "rellich", "split2d",
                                                "lipschitz",     "lidskii",    "diag",    "canonical"};
    return names;
}

namespace detail
{

inline std::string line_column(std::string_view text, std::size_t byte)
{
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const json &field(const json &obj, const std::string &key, const std::string &path)
{
    if (!obj.is_object() || !obj.contains(key)) {
        raise(errc::parse_error, path + "/" + key + ": missing field");
    }
    return obj.at(key);
}

inline int as_int(const json &j, const std::string &path)
{
    if (!j.is_number_integer()) {
        raise(errc::parse_error, path + ": expected an integer");
    }
    const auto v = j.get<std::int64_t>();
    if (v < INT32_MIN || v > INT32_MAX) {
        raise(errc::schema_error, path + ": integer out of range");
    }
    return static_cast<int>(v);
}

// Integers may be given as JSON numbers or, when large, as decimal strings.
inline mpz_class as_bigint(const json &j, const std::string &path)
{
    if (j.is_number_integer()) {
        return mpz_class(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        mpz_class z;
        const auto &s = j.get_ref<const std::string &>();
        if (s.empty() || z.set_str(s, 10) != 0) {
            raise(errc::parse_error, path + ": not a decimal integer");
        }
        return z;
    }
    raise(errc::parse_error, path + ": expected an integer");
}

inline json bigint_json(const mpz_class &z)
{
    if (z.fits_slong_p()) {
        return json(static_cast<std::int64_t>(z.get_si()));
    }
    return json(z.get_str());
}

inline Series parse_series(const json &j, int nvars, const std::string &path)
{
    if (!j.is_array()) {
        raise(errc::parse_error, path + ": expected an array of terms");
    }
    Series out(nvars);
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = path + "/" + std::to_string(k);
        const json &t = j[k];
        if (!t.is_object()) {
            raise(errc::parse_error, p + ": expected a term object");
        }
        const json &ex = field(t, "exponents", p);
        if (!ex.is_array()) {
            raise(errc::parse_error, p + "/exponents: expected an array");
        }
        if (static_cast<int>(ex.size()) != nvars) {
            raise(errc::schema_error, p + "/exponents: length " + std::to_string(ex.size()) + " differs from the "
                                          + std::to_string(nvars) + " variables");
        }
        std::vector<int> e;
        for (std::size_t v = 0; v < ex.size(); ++v) {
            const int x = as_int(ex[v], p + "/exponents/" + std::to_string(v));
            if (x < 0 || x > Monomial::max_exponent) {
                raise(errc::schema_error, p + "/exponents/" + std::to_string(v) + ": exponent out of range");
            }
            e.push_back(x);
        }
        if (!seen.insert(e).second) {
            raise(errc::schema_error, p + "/exponents: duplicated exponent vector");
        }
        const mpz_class num = as_bigint(field(t, "num", p), p + "/num");
        const mpz_class den = as_bigint(field(t, "den", p), p + "/den");
        if (sgn(den) <= 0) {
            raise(errc::schema_error, p + "/den: denominator must be positive");
        }
        out += Series::monomial(nvars, Monomial(std::span<const int>(e)), make_rat(num, den));
    }
    return out;
}

inline void check_keys(const json &obj, std::initializer_list<std::string_view> keys, const std::string &path)
{
    for (const auto &[k, v] : obj.items()) {
        (void)v;
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            raise(errc::schema_error, path + "/" + k + ": unknown field");
        }
    }
}

} // namespace detail

inline FamilyDocument parse_family_json(const json &root)
{
    if (!root.is_object()) {
        raise(errc::parse_error, "/: expected an object");
    }
    FamilyDocument doc;
    const json &kind = detail::field(root, "kind", "");
    if (kind == "polynomial_family") {
        doc.kind = document_kind::polynomial_family;
        detail::check_keys(root, {"kind", "variables", "degree", "coefficients"}, "");
    } else if (kind == "matrix_family") {
        doc.kind = document_kind::matrix_family;
        detail::check_keys(root, {"kind", "variables", "size", "entries", "symmetry"}, "");
    } else {
        raise(errc::schema_error, "/kind: expected polynomial_family or matrix_family");
    }
    const json &vars = detail::field(root, "variables", "");
    if (!vars.is_array()) {
        raise(errc::parse_error, "/variables: expected an array of strings");
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!vars[i].is_string() || vars[i].get_ref<const std::string &>().empty()) {
            raise(errc::parse_error, "/variables/" + std::to_string(i) + ": expected a nonempty string");
        }
        const auto &name = vars[i].get_ref<const std::string &>();
        if (std::find(doc.variables.begin(), doc.variables.end(), name) != doc.variables.end()) {
            raise(errc::schema_error, "/variables/" + std::to_string(i) + ": duplicated name " + name);
        }
        doc.variables.push_back(name);
    }
    if (doc.variables.empty() || doc.num_vars() > Monomial::max_vars) {
        raise(errc::schema_error, "/variables: between 1 and 8 variables are supported");
    }
    const int n = doc.num_vars();
    if (doc.kind == document_kind::polynomial_family) {
        doc.dimension = detail::as_int(detail::field(root, "degree", ""), "/degree");
        if (doc.dimension < 1) {
            raise(errc::schema_error, "/degree: must be >= 1");
        }
        const json &co = detail::field(root, "coefficients", "");
        if (!co.is_object()) {
            raise(errc::parse_error, "/coefficients: expected an object with keys a1..ad");
        }
        doc.coefficients.assign(static_cast<std::size_t>(doc.dimension), Series(n));
        for (const auto &[k, v] : co.items()) {
            int i = 0;
            if (k.size() < 2 || k[0] != 'a' || !std::all_of(k.begin() + 1, k.end(), [](char c) { return c >= '0' && c <= '9'; })
                || (i = std::stoi(k.substr(1))) < 1 || i > doc.dimension || k[1] == '0') {
                raise(errc::schema_error, "/coefficients/" + k + ": expected a key a1..a" + std::to_string(doc.dimension));
            }
            doc.coefficients[static_cast<std::size_t>(i - 1)] = detail::parse_series(v, n, "/coefficients/" + k);
        }
        return doc;
    }
    doc.dimension = detail::as_int(detail::field(root, "size", ""), "/size");
    if (doc.dimension < 1) {
        raise(errc::schema_error, "/size: must be >= 1");
    }
    const auto d = static_cast<std::size_t>(doc.dimension);
    if (root.contains("symmetry")) {
        const json &s = root.at("symmetry");
        if (s == "symmetric") {
            doc.tag = symmetry::symmetric;
        } else if (s == "antisymmetric") {
            doc.tag = symmetry::antisymmetric;
        } else if (s == "none") {
            doc.tag = symmetry::none;
        } else {
            raise(errc::schema_error, "/symmetry: expected symmetric, antisymmetric or none");
        }
    }
    const json &rows = detail::field(root, "entries", "");
    if (!rows.is_array()) {
        raise(errc::parse_error, "/entries: expected an array of rows");
    }
    if (rows.size() != d) {
        raise(errc::schema_error, "/entries: " + std::to_string(rows.size()) + " rows for size " + std::to_string(d));
    }
    doc.entries = Matrix<Series>(d, d, Series(n));
    for (std::size_t i = 0; i < d; ++i) {
        const std::string p = "/entries/" + std::to_string(i);
        if (!rows[i].is_array()) {
            raise(errc::parse_error, p + ": expected an array of entries");
        }
        if (rows[i].size() != d) {
            raise(errc::schema_error, p + ": row length differs from the size");
        }
        for (std::size_t j = 0; j < d; ++j) {
            doc.entries(i, j) = detail::parse_series(rows[i][j], n, p + "/" + std::to_string(j));
        }
    }
    try {
        (void)doc.matrix();
    } catch (const error &e) {
        if (e.code() == errc::not_symmetric || e.code() == errc::not_antisymmetric) {
            raise(errc::schema_error, "/entries: " + e.detail() + " under the \"" + std::string(symmetry_name(doc.tag)) + "\" tag");
        }
        throw;
    }
    return doc;
}

inline FamilyDocument parse_family(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        raise(errc::parse_error, detail::line_column(text, e.byte) + ": " + e.what());
    }
    return parse_family_json(root);
}

// Terms of a series in the document encoding.
inline json series_terms_json(const Series &s)
{
    json out = json::array();
    for (const auto &[m, c] : s.terms()) {
        out.push_back({{"exponents", m.exponents(s.num_vars())},
                       {"num", detail::bigint_json(c.get_num())},
                       {"den", detail::bigint_json(c.get_den())}});
    }
    return out;
}

inline json serialize_family(const FamilyDocument &doc)
{
    json out;
    const bool poly = doc.kind == document_kind::polynomial_family;
    out["kind"] = poly ? "polynomial_family" : "matrix_family";
    out["variables"] = doc.variables;
    if (poly) {
        out["degree"] = doc.dimension;
        json co = json::object();
        for (std::size_t i = 0; i < doc.coefficients.size(); ++i) {
            if (!doc.coefficients[i].is_zero()) {
                co["a" + std::to_string(i + 1)] = series_terms_json(doc.coefficients[i]);
            }
        }
        out["coefficients"] = co;
        return out;
    }
    out["size"] = doc.dimension;
    out["symmetry"] = std::string(symmetry_name(doc.tag));
    json rows = json::array();
    for (std::size_t i = 0; i < doc.entries.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < doc.entries.cols(); ++j) {
            row.push_back(series_terms_json(doc.entries(i, j)));
        }
        rows.push_back(row);
    }
    out["entries"] = rows;
    return out;
}

// Splits "a,b,c,d" into a region.
inline Region parse_region(const std::string &s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) {
                v.clear();
                break;
            }
        } catch (const std::exception &) {
            v.clear();
            break;
        }
    }
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) {
        raise(errc::invalid_argument, "region must be a,b,c,d with a < b and c < d");
    }
    return Region{v[0], v[1], v[2], v[3]};
}

namespace detail
{

inline json series_json(const Series &s, const std::vector<std::string> &names)
{
    json out;
    out["text"] = to_string(s, names);
    out["order"] = s.is_exact() ? json(nullptr) : json(s.trunc_order());
    out["terms"] = series_terms_json(s);
    return out;
}

inline json family_json(const MonicFamily &p, const std::vector<std::string> &names)
{
    json out;
    out["text"] = p.to_string(names);
    json co = json::array();
    for (const auto &a : p.coeffs()) {
        co.push_back(series_json(a, names));
    }
    out["coefficients"] = co;
    return out;
}

inline json vector_json(const ScaledVector<Rat> &v, const std::vector<std::string> &names)
{
    json u = json::array();
    for (const auto &s : v.u) {
        u.push_back(series_json(s, names));
    }
    return {{"u", u}, {"c", to_string(v.c)}};
}

inline json roots_json(const RootBranchSet &r, const std::vector<std::string> &names)
{
    json br = json::array();
    for (const auto &b : r.branches) {
        br.push_back(series_json(b, names));
    }
    json gr = json::array();
    for (const auto &g : r.groups) {
        gr.push_back({{"polynomial", family_json(g.polynomial(), names)},
                      {"inner", family_json(g.inner, names)},
                      {"scale", g.scale.exponents(r.num_vars)},
                      {"shift", series_json(g.shift, names)}});
    }
    return {{"branches", br}, {"groups", gr}};
}

inline bool residual_zero_to(const std::vector<Series> &res, int order)
{
    return std::all_of(res.begin(), res.end(),
                       [&](const Series &s) { return s.truncated(std::min(order, s.trunc_order())).is_zero(); });
}

inline std::vector<double> point_of(double x1, double x2, int nvars)
{
    std::vector<double> pt(static_cast<std::size_t>(nvars), 0.0);
    pt[0] = x1;
    if (nvars > 1) {
        pt[1] = x2;
    }
    return pt;
}

inline json cmd_discriminants(const FamilyDocument &doc, const RunConfig &)
{
    const MonicFamily p = doc.family();
    const auto ds = generalized_discriminants(p);
    json out;
    json list = json::array();
    bool constant = p.is_exact();
    for (std::size_t s = 0; s < ds.size(); ++s) {
        constant = constant && ds[s].is_constant();
        list.push_back({{"index", s}, {"value", series_json(ds[s], doc.variables)}});
    }
    out["degree"] = p.degree();
    out["discriminants"] = list;
    if (constant && std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Series &c) { return c.is_constant(); })) {
        std::vector<Rat> a;
        for (const auto &c : p.coeffs()) {
            a.push_back(c.constant_term());
        }
        out["distinct_roots"] = max_distinct_roots(a);
        const auto g = gd2_check(a);
        out["reduced_identity"] = {{"holds", g.holds}, {"lhs", to_string(g.lhs)}, {"rhs", to_string(g.rhs)}};
    }
    return out;
}

inline json cmd_hyperbolic(const FamilyDocument &doc, const RunConfig &cfg)
{
    const MonicFamily p = doc.family();
    const int n = p.num_vars();
    json out;
    out["hyperbolic_at_origin"] = is_hyperbolic_exact(p.at_origin().monic_coeffs());
    if (n == 1) {
        out["necessary_condition"] = necessary_sign_check(tschirnhausen(p).family);
    }
    if (n <= 2) {
        auto g = sample_grid([&](double x1, double x2) { return p.evaluate(point_of(x1, x2, n)); }, cfg.region,
                             cfg.grid, cfg.tol);
        int bad = 0;
        for (const auto &row : g) {
            for (const auto &r : row) {
                bad += r.empty() ? 1 : 0;
            }
        }
        out["grid"] = {{"points", cfg.grid * cfg.grid}, {"non_hyperbolic", bad}};
    }
    return out;
}

inline json cmd_rellich(const FamilyDocument &doc, const RunConfig &cfg)
{
    const MonicFamily p = doc.family();
    const RootBranchSet r = analytic_roots(p, cfg.order);
    json out = roots_json(r, doc.variables);
    out["order"] = cfg.order;
    out["residual_zero"] = residual_zero_to(verify_product(p, r), std::min(cfg.order, r.precision()));
    return out;
}

inline json cmd_split2d(const FamilyDocument &doc, const RunConfig &cfg)
{
    const MonicFamily p = doc.family();
    const HornedSplit hs = horned_split(p, cfg.order, cfg.max_steps);
    const BoundaryDerivative bd = boundary_derivative(p, cfg.order, cfg.max_steps);
    json out;
    out["exponent"] = hs.region.exponent;
    out["order"] = cfg.order;
    out["roots"] = roots_json(hs.roots, doc.variables);
    const MonicFamily pulled = horned_pullback(p, hs.region.exponent);
    out["residual_zero"] = residual_zero_to(verify_product(pulled, hs.roots), std::min(cfg.order, hs.precision()));
    const std::vector<std::string> yname{doc.variables[1]};
    json d = json::array();
    for (const auto &b : bd.branches) {
        d.push_back(series_json(b, yname));
    }
    json dg = json::array();
    for (const auto &g : bd.groups) {
        dg.push_back(family_json(g, yname));
    }
    out["boundary_derivative"] = {{"branches", d}, {"groups", dg}};
    return out;
}

inline CommandResult cmd_lipschitz(const FamilyDocument &doc, const RunConfig &cfg)
{
    const MonicFamily p = doc.family();
    const int n = p.num_vars();
    if (n > 2) {
        raise(errc::invalid_argument, "lipschitz scans take one or two parameters");
    }
    const CoefficientEvaluator eval = [&](double x1, double x2) { return p.evaluate(point_of(x1, x2, n)); };
    if (cfg.format == "csv") {
        const int m = (cfg.grid - 1) * (1 << (cfg.levels - 1)) + 1;
        const Region &r = cfg.region;
        auto g = sample_grid(eval, r, m, cfg.tol);
        std::ostringstream os;
        os.precision(17);
        os << "x1,x2";
        for (int k = 1; k <= p.degree(); ++k) {
            os << ",lambda_" << k;
        }
        os << "\n";
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                os << r.x1_min + (r.x1_max - r.x1_min) * i / (m - 1) << "," << r.x2_min + (r.x2_max - r.x2_min) * j / (m - 1);
                const auto &roots = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                for (int k = 0; k < p.degree(); ++k) {
                    os << ",";
                    if (!roots.empty()) {
                        os << roots[static_cast<std::size_t>(k)];
                    }
                }
                os << "\n";
            }
        }
        return {0, os.str()};
    }
    const auto rep = lipschitz_scan(eval, cfg.region, cfg.grid, cfg.levels, cfg.tol);
    json out;
    out["command"] = "lipschitz";
    out["status"] = "ok";
    out["region"] = {rep.region.x1_min, rep.region.x1_max, rep.region.x2_min, rep.region.x2_max};
    out["grid_sizes"] = rep.grid_sizes;
    out["sup_quotients"] = rep.sup_quotients;
    out["excluded_points"] = rep.excluded_points;
    return {0, out.dump(2) + "\n"};
}

inline json cmd_lidskii(const FamilyDocument *doc, const RunConfig &cfg)
{
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::optional<MatrixFamily> fam;
    if (doc != nullptr) {
        fam = doc->matrix();
        if (fam->tag() != symmetry::symmetric) {
            raise(errc::not_symmetric, "lidskii needs a symmetric matrix family");
        }
    } else if (cfg.size < 1 || cfg.size > 64) {
        raise(errc::invalid_argument, "size must be in [1, 64]");
    }
    auto draw = [&]() -> Eigen::MatrixXd {
        if (fam) {
            const Region &r = cfg.region;
            std::vector<double> pt;
            for (int v = 0; v < fam->num_vars(); ++v) {
                const double t = (unit(rng) + 1.0) / 2.0;
                pt.push_back(v == 0 ? r.x1_min + t * (r.x1_max - r.x1_min)
                                    : v == 1 ? r.x2_min + t * (r.x2_max - r.x2_min) : 2.0 * t - 1.0);
            }
            return fam->evaluate(pt);
        }
        Eigen::MatrixXd m(cfg.size, cfg.size);
        for (int i = 0; i < cfg.size; ++i) {
            for (int j = 0; j <= i; ++j) {
                m(i, j) = m(j, i) = unit(rng);
            }
        }
        return m;
    };
    int hull = 0, weyl = 0;
    json failures = json::array();
    for (int k = 0; k < cfg.count; ++k) {
        const Eigen::MatrixXd a = draw();
        const Eigen::MatrixXd b = draw();
        const auto rep = lidskii_check(a, b, cfg.tol);
        hull += rep.in_hull ? 1 : 0;
        weyl += rep.weyl ? 1 : 0;
        if (!rep.in_hull || !rep.weyl) {
            failures.push_back({{"pair", k}, {"witness", rep.witness}, {"weyl_lhs", rep.weyl_lhs}, {"weyl_rhs", rep.weyl_rhs}});
        }
    }
    json out;
    out["source"] = fam ? "family" : "random";
    out["seed"] = cfg.seed;
    out["pairs"] = cfg.count;
    out["in_hull"] = hull;
    out["weyl"] = weyl;
    out["failures"] = failures;
    return out;
}

inline MatrixFamily charted(const FamilyDocument &doc, const RunConfig &cfg)
{
    MatrixFamily a = doc.matrix();
    if (cfg.chart_from == 0) {
        return a;
    }
    const int n = a.num_vars();
    if (cfg.chart_from < 1 || cfg.chart_to < 1 || cfg.chart_from > n || cfg.chart_to > n || cfg.chart_from == cfg.chart_to) {
        raise(errc::invalid_argument, "chart needs two distinct variable indices in [1, " + std::to_string(n) + "]");
    }
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(cfg.chart_from - 1)] = 1;
    e[static_cast<std::size_t>(cfg.chart_to - 1)] = 1;
    return a.substituted(cfg.chart_to - 1, Monomial(std::span<const int>(e)));
}

inline json cmd_diag(const FamilyDocument &doc, const RunConfig &cfg)
{
    const MatrixFamily a = charted(doc, cfg);
    if (a.tag() == symmetry::none) {
        reject_non_normal(a);
    }
    const EigenDecomp dec = diagonalize_family(a, cfg.order);
    json br = json::array();
    for (const auto &b : dec.branches) {
        json basis = json::array();
        for (const auto &v : b.basis) {
            basis.push_back(vector_json(v, doc.variables));
        }
        br.push_back({{"value", series_json(b.value, doc.variables)}, {"multiplicity", b.multiplicity}, {"basis", basis}});
    }
    json out;
    out["order"] = dec.order;
    out["branches"] = br;
    out["check"] = {{"dimension", dec.check.dimension},
                    {"eigen", dec.check.eigen},
                    {"orthonormal", dec.check.orthonormal},
                    {"cross_orthogonal", dec.check.cross_orthogonal}};
    return out;
}

inline json cmd_canonical(const FamilyDocument &doc, const RunConfig &cfg)
{
    const MatrixFamily a = charted(doc, cfg);
    if (a.tag() == symmetry::none) {
        reject_non_normal(a);
    }
    const CanonicalFamily cf = antisym_canonical_family(a, cfg.order);
    json ls = json::array();
    for (const auto &l : cf.lambdas) {
        ls.push_back(series_json(l, doc.variables));
    }
    json basis = json::array();
    for (const auto &v : cf.basis) {
        basis.push_back(vector_json(v, doc.variables));
    }
    json out;
    out["order"] = cf.order;
    out["lambdas"] = ls;
    out["zeros"] = cf.zeros;
    out["basis"] = basis;
    out["check"] = {{"orthonormal", cf.orthonormal}, {"canonical", cf.canonical}};
    return out;
}

inline void validate(const RunConfig &cfg)
{
    if (cfg.order < 1) {
        raise(errc::invalid_argument, "order must be >= 1");
    }
    if (!(cfg.tol > 0)) {
        raise(errc::invalid_argument, "tol must be > 0");
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        raise(errc::invalid_argument, "format must be json or csv");
    }
    if (cfg.grid < 2 || cfg.levels < 1 || cfg.levels > 12) {
        raise(errc::invalid_argument, "grid must be >= 2 and levels in [1, 12]");
    }
    if (cfg.count < 0) {
        raise(errc::invalid_argument, "count must be >= 0");
    }
}

inline json error_json(const std::string &command, std::string_view code, const std::string &message)
{
    json out;
    out["command"] = command;
    out["status"] = "error";
    out["error"] = {{"code", code}, {"message", message}};
    return out;
}

} // namespace detail

// Runs one command on the document text (empty when the command takes no
// input). The output is a JSON report, or CSV for lipschitz with format csv.
inline CommandResult run_command(const std::string &name, std::string_view input, const RunConfig &cfg)
{
    try {
        const auto &names = command_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            raise(errc::unknown_command, "unknown command '" + name + "'");
        }
        detail::validate(cfg);
        std::optional<FamilyDocument> doc;
        if (!input.empty()) {
            doc = parse_family(input);
        } else if (name != "lidskii") {
            raise(errc::invalid_argument, name + " needs an input document");
        }
        if (name == "lipschitz") {
            return detail::cmd_lipschitz(*doc, cfg);
        }
        json body;
        if (name == "discriminants") {
            body = detail::cmd_discriminants(*doc, cfg);
        } else if (name == "hyperbolic") {
            body = detail::cmd_hyperbolic(*doc, cfg);
        } else if (name == "rellich") {
            body = detail::cmd_rellich(*doc, cfg);
        } else if (name == "split2d") {
            if (doc->num_vars() != 2) {
                raise(errc::invalid_argument, "split2d expects two variables");
            }
            body = detail::cmd_split2d(*doc, cfg);
        } else if (name == "lidskii") {
            body = detail::cmd_lidskii(doc ? &*doc : nullptr, cfg);
        } else if (name == "diag") {
            body = detail::cmd_diag(*doc, cfg);
        } else {
            body = detail::cmd_canonical(*doc, cfg);
        }
        json out;
        out["command"] = name;
        out["status"] = "ok";
        for (auto &[k, v] : body.items()) {
            out[k] = v;
        }
        return {0, out.dump(2) + "\n"};
    } catch (const error &e) {
        return {is_input_error(e.code()) ? 2 : 1, detail::error_json(name, errc_name(e.code()), e.detail()).dump(2) + "\n"};
    }
}

} // namespace hyperroots
