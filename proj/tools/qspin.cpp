#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qspin/qspin.hpp>

namespace {

using qspin::cx;
using qspin::json;

// problems with user-supplied input files are usage errors, not invariant
// failures, and exit with a distinct status
struct family_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = qspin::kDefaultSeed;
    double tol = qspin::kDefaultTol;
    bool as_json = false;
    std::string csv_path;
    std::size_t samples = 1;
    std::size_t grid = 64;
};

void add_base(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "seed for every random draw in this run")->capture_default_str();
    sub->add_option("--tol", c.tol, "numeric tolerance for validation checks")->capture_default_str();
    sub->add_flag("--json", c.as_json, "emit the report as JSON on stdout");
}

void add_samples(CLI::App* sub, Common& c, std::size_t def, const std::string& what) {
    c.samples = def;
    sub->add_option("--samples", c.samples, what)
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
}

void add_grid(CLI::App* sub, Common& c, std::size_t def, std::size_t hi, const std::string& what) {
    c.grid = def;
    sub->add_option("--grid", c.grid, what)
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{8}, hi));
}

void add_csv(CLI::App* sub, Common& c, const std::string& what) {
    sub->add_option("--csv", c.csv_path, what);
}

void emit(const Common& c, const json& rep, const std::string& text) {
    if (c.as_json) std::cout << rep.dump(2) << "\n";
    else std::cout << text;
}

json settings_json(const qspin::ChshSettings& s) {
    return json{{"a", qspin::jreal(s.a)},
                {"a_prime", qspin::jreal(s.a_prime)},
                {"b", qspin::jreal(s.b)},
                {"b_prime", qspin::jreal(s.b_prime)}};
}

constexpr double kDeg = qspin::kPi / 180.0;

int run_chsh(const Common& c, bool optimize) {
    const qspin::StateVector s = qspin::singlet();
    const qspin::ChshSettings canonical{0.0, qspin::kPi / 2.0, -qspin::kPi / 4.0, qspin::kPi / 4.0};
    const double canonical_value = qspin::chsh_value(s, canonical);

    json rep{{"command", "chsh"},
             {"seed", c.seed},
             {"canonical",
              json{{"settings", settings_json(canonical)}, {"value", qspin::jreal(canonical_value)}}}};
    std::ostringstream text;
    text << "singlet pair: E(a,b) = -cos(a-b)\n";
    text << "  four-setting combination at (0, pi/2, -pi/4, pi/4): " << qspin::fmt15(canonical_value)
         << "\n";

    if (optimize) {
        const qspin::ChshResult r = qspin::chsh_optimize(s, c.grid);
        rep["optimum"] = json{{"grid", c.grid},
                              {"settings", settings_json(r.settings)},
                              {"value", qspin::jreal(r.value)},
                              {"abs_value", qspin::jreal(std::abs(r.value))}};
        text << "  optimized |combination| = " << qspin::fmt15(std::abs(r.value)) << "\n";
        text << "    at a=" << qspin::fmt15(r.settings.a) << "  a'=" << qspin::fmt15(r.settings.a_prime)
             << "  b=" << qspin::fmt15(r.settings.b) << "  b'=" << qspin::fmt15(r.settings.b_prime)
             << "\n";
    }

    if (!c.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < c.samples; ++k) {
            const double deg = 360.0 * static_cast<double>(k) / static_cast<double>(c.samples);
            const qspin::PairProbs p = qspin::pair_probs(s, deg * kDeg, 0.0);
            rows.push_back({deg, p.pp, p.pm, p.mp, p.mm, qspin::correlation(p)});
        }
        qspin::write_csv_atomic(c.csv_path, {"theta_deg", "p_pp", "p_pm", "p_mp", "p_mm", "E"}, rows);
        rep["csv"] = json{{"path", c.csv_path}, {"rows", rows.size()}};
        text << "  wrote " << rows.size() << " sweep rows to " << c.csv_path << "\n";
    }
    emit(c, rep, text.str());
    return 0;
}

int run_lhv(const Common& c) {
    qspin::Rng rng(c.seed);
    double max_det = 0.0;
    for (std::size_t i = 0; i < c.samples; ++i) {
        const qspin::LocalDeterministicModel m = qspin::random_deterministic_model(rng);
        max_det = std::max(max_det, std::abs(qspin::lhv_chsh(m)));
    }
    double max_sto = 0.0;
    for (std::size_t i = 0; i < c.samples; ++i) {
        const qspin::StochasticLocalModel m = qspin::random_stochastic_model(rng);
        const qspin::ChshSettings s{rng.uniform(0.0, 2.0 * qspin::kPi), rng.uniform(0.0, 2.0 * qspin::kPi),
                                    rng.uniform(0.0, 2.0 * qspin::kPi), rng.uniform(0.0, 2.0 * qspin::kPi)};
        max_sto = std::max(max_sto, std::abs(qspin::stochastic_local_chsh(m, s)));
    }
    double max_sep = 0.0;
    for (std::size_t i = 0; i < c.samples; ++i) {
        const qspin::SeparableDecomposition d = qspin::random_convex_separable(rng);
        const qspin::ChshSettings s{rng.uniform(0.0, 2.0 * qspin::kPi), rng.uniform(0.0, 2.0 * qspin::kPi),
                                    rng.uniform(0.0, 2.0 * qspin::kPi), rng.uniform(0.0, 2.0 * qspin::kPi)};
        max_sep = std::max(max_sep, std::abs(qspin::separable_chsh(d, s)));
    }
    const double uniform16 = qspin::lhv_chsh(qspin::uniform_strategies());

    const qspin::SeparableDecomposition expansion = qspin::singlet_separable_expansion();
    const double coeff = qspin::coefficient_sum(expansion);
    const double recon =
        qspin::max_diff(qspin::reconstruct(expansion), qspin::density_from_state(qspin::singlet()).mat);
    const qspin::ChshSettings canonical{0.0, qspin::kPi / 2.0, -qspin::kPi / 4.0, qspin::kPi / 4.0};
    const double signed_value = qspin::separable_chsh(expansion, canonical);

    json rep{{"command", "lhv"},
             {"seed", c.seed},
             {"samples", c.samples},
             {"max_abs_deterministic", qspin::jreal(max_det)},
             {"max_abs_stochastic", qspin::jreal(max_sto)},
             {"max_abs_convex_separable", qspin::jreal(max_sep)},
             {"uniform_sixteen_value", qspin::jreal(uniform16)},
             {"signed_singlet_expansion",
              json{{"coefficient_sum", qspin::jreal(coeff)},
                   {"reconstruction_residual", qspin::jreal(recon)},
                   {"value_at_canonical", qspin::jreal(signed_value)}}}};
    std::ostringstream text;
    text << "local model sweeps, " << c.samples << " samples per family\n";
    text << "  deterministic   max |combination| = " << qspin::fmt15(max_det) << "\n";
    text << "  stochastic      max |combination| = " << qspin::fmt15(max_sto) << "\n";
    text << "  convex product  max |combination| = " << qspin::fmt15(max_sep) << "\n";
    text << "  uniform mix of the 16 strategies: " << qspin::fmt15(uniform16) << "\n";
    text << "signed product expansion of the singlet (coefficients sum to "
         << qspin::fmt15(coeff) << ")\n";
    text << "  combination at canonical settings: " << qspin::fmt15(signed_value) << "\n";
    emit(c, rep, text.str());
    return 0;
}

int run_ghz(const Common& c) {
    const qspin::StateVector g = qspin::ghz3(cx{-1.0});
    struct Named {
        const char* name;
        std::vector<qspin::Axis> axes;
    };
    const std::vector<Named> prods = {
        {"xyy", {qspin::axis_x(), qspin::axis_y(), qspin::axis_y()}},
        {"yxy", {qspin::axis_y(), qspin::axis_x(), qspin::axis_y()}},
        {"yyx", {qspin::axis_y(), qspin::axis_y(), qspin::axis_x()}},
        {"xxx", {qspin::axis_x(), qspin::axis_x(), qspin::axis_x()}},
    };
    json jp;
    std::ostringstream text;
    text << "three-spin state with eta = -1\n";
    for (const Named& n : prods) {
        const qspin::ProductExpectation e = qspin::product_op_expectation(g, n.axes);
        jp[n.name] = json{{"expectation", qspin::jreal(e.expectation)}, {"is_eigen", e.is_eigen}};
        text << "  <" << n.name << "> = " << qspin::fmt15(e.expectation)
             << (e.is_eigen ? "  (eigenstate)" : "") << "\n";
    }
    const qspin::LocalRealistParity lr = qspin::local_realist_parity();
    json rep{{"command", "ghz"},
             {"seed", c.seed},
             {"eta", -1},
             {"products", jp},
             {"enumeration",
              json{{"assignments", lr.assignments},
                   {"satisfying", lr.satisfying},
                   {"forced_product", lr.forced_product}}},
             {"quantum_xxx", qspin::jreal(lr.quantum_xxx)},
             {"contradiction", lr.contradiction}};
    text << "  local assignment tables: " << lr.satisfying << " of " << lr.assignments
         << " satisfy the three certainty constraints, all force AxBxCx = " << lr.forced_product << "\n";
    text << "  quantum value of the (x,x,x) product: " << qspin::fmt15(lr.quantum_xxx) << "\n";
    text << (lr.contradiction ? "  contradiction established\n" : "  no contradiction found\n");

    if (!c.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < c.samples; ++k) {
            const double deg = 360.0 * static_cast<double>(k) / static_cast<double>(c.samples);
            const double e = qspin::transverse_correlation(g, {deg * kDeg, 0.0, 0.0});
            rows.push_back({deg, e});
        }
        qspin::write_csv_atomic(c.csv_path, {"sum_theta_deg", "E"}, rows);
        rep["csv"] = json{{"path", c.csv_path}, {"rows", rows.size()}};
        text << "  wrote " << rows.size() << " sweep rows to " << c.csv_path << "\n";
    }
    emit(c, rep, text.str());
    return 0;
}

int run_allornothing(const Common& c, std::size_t sites, double phi) {
    const qspin::AllOrNothingState a = qspin::aon_max_corr(sites, phi);
    const qspin::StateVector psi = qspin::aon_state(a);

    qspin::Rng rng(c.seed);
    double max_res = 0.0;
    for (std::size_t rep_i = 0; rep_i < c.samples; ++rep_i) {
        std::vector<double> thetas(sites);
        double sum = 0.0;
        for (double& t : thetas) {
            t = rng.uniform(0.0, 2.0 * qspin::kPi);
            sum += t;
        }
        const double e = qspin::transverse_correlation(psi, thetas);
        max_res = std::max(max_res, std::abs(e - std::cos(sum - phi)));
    }
    const double coh_full = qspin::subsystem_coherence(psi, sites);
    const double coh_partial = qspin::subsystem_coherence(psi, sites - 1);

    json rep{{"command", "allornothing"},
             {"seed", c.seed},
             {"sites", sites},
             {"phi", qspin::jreal(phi)},
             {"samples", c.samples},
             {"max_cosine_residual", qspin::jreal(max_res)},
             {"coherence_full", qspin::jreal(coh_full)},
             {"coherence_minus_one_site", qspin::jreal(coh_partial)}};
    std::ostringstream text;
    text << "all-or-nothing state, " << sites << " sites, phi = " << qspin::fmt15(phi) << "\n";
    text << "  E = cos(sum theta - phi): max residual over " << c.samples
         << " random angle sets = " << qspin::fmt15(max_res) << "\n";
    text << "  coherence across all sites:      " << qspin::fmt15(coh_full) << "\n";
    text << "  coherence after dropping a site: " << qspin::fmt15(coh_partial) << "\n";

    if (!c.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < c.samples; ++k) {
            const double deg = 360.0 * static_cast<double>(k) / static_cast<double>(c.samples);
            std::vector<double> thetas(sites, 0.0);
            thetas[0] = deg * kDeg;
            rows.push_back({deg, qspin::transverse_correlation(psi, thetas),
                            std::cos(deg * kDeg - phi)});
        }
        qspin::write_csv_atomic(c.csv_path, {"sum_theta_deg", "E", "closed_form"}, rows);
        rep["csv"] = json{{"path", c.csv_path}, {"rows", rows.size()}};
        text << "  wrote " << rows.size() << " sweep rows to " << c.csv_path << "\n";
    }
    emit(c, rep, text.str());
    return 0;
}

int run_hardy(const Common& c) {
    const qspin::HardyMax m = qspin::hardy_maximize(c.grid);
    const qspin::HardyExclusions ex = qspin::verify_exclusions(qspin::hardy_state(m.theta_star));
    double sweep_max = 0.0;
    for (std::size_t k = 1; k < c.samples; ++k) {
        const double th = (qspin::kPi / 2.0) * static_cast<double>(k) / static_cast<double>(c.samples);
        sweep_max = std::max(sweep_max, qspin::max_residual(qspin::verify_exclusions(qspin::hardy_state(th))));
    }

    json rep{{"command", "hardy"},
             {"seed", c.seed},
             {"theta_star", qspin::jreal(m.theta_star)},
             {"p_star", qspin::jreal(m.p_star)},
             {"exclusion_residuals",
              json{{"plus_u", qspin::jreal(ex.r_plus_u)},
                   {"u_plus", qspin::jreal(ex.r_u_plus)},
                   {"minus_minus", qspin::jreal(ex.r_minus_minus)}}},
             {"sweep", json{{"points", c.samples - 1}, {"max_residual", qspin::jreal(sweep_max)}}}};
    std::ostringstream text;
    text << "impossible-event probability\n";
    text << "  maximum p = " << qspin::fmt15(m.p_star) << " at theta = " << qspin::fmt15(m.theta_star)
         << "\n";
    text << "  exclusion overlaps at the optimum: " << qspin::fmt15(qspin::max_residual(ex)) << "\n";
    text << "  max exclusion residual over " << (c.samples - 1)
         << " sweep points: " << qspin::fmt15(sweep_max) << "\n";

    if (!c.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 1; k < c.samples; ++k) {
            const double frac = static_cast<double>(k) / static_cast<double>(c.samples);
            rows.push_back({90.0 * frac, qspin::hardy_prob(frac * qspin::kPi / 2.0)});
        }
        qspin::write_csv_atomic(c.csv_path, {"theta_deg", "p"}, rows);
        rep["csv"] = json{{"path", c.csv_path}, {"rows", rows.size()}};
        text << "  wrote " << rows.size() << " sweep rows to " << c.csv_path << "\n";
    }
    emit(c, rep, text.str());
    return 0;
}

std::string sign_string(const std::array<int, 3>& s) {
    std::string out;
    for (int i = 0; i < 3; ++i) {
        if (i) out += ",";
        out += (s[i] > 0) ? "+1" : "-1";
    }
    return out;
}

int run_bks(const Common& c) {
    const qspin::OperatorSquare q = qspin::mermin_square();
    const qspin::SquareValidation v = qspin::validate(q);
    const qspin::ColoringReport col = qspin::coloring_search(q);
    const qspin::Spin1Squares s1 = qspin::spin1_squares();
    double spectrum_res = 0.0;
    for (const qspin::Mat* m : {&s1.sx2, &s1.sy2, &s1.sz2}) {
        const qspin::EigResult e = qspin::eig_hermitian(*m);
        spectrum_res = std::max({spectrum_res, std::abs(e.values[0]), std::abs(e.values[1] - 1.0),
                                 std::abs(e.values[2] - 1.0)});
    }

    json rep{{"command", "bks"},
             {"seed", c.seed},
             {"assignments_examined", col.assignments_examined},
             {"colorings_found", col.satisfying},
             {"relaxed_all_plus", col.relaxed_all_plus},
             {"row_products", sign_string(q.row_sign)},
             {"col_products", sign_string(q.col_sign)},
             {"max_product_residual", qspin::jreal(v.max_product_residual)},
             {"max_commutator", qspin::jreal(v.max_commutator)},
             {"max_square_residual", qspin::jreal(v.max_square_residual)},
             {"spin1",
              json{{"max_commutator", qspin::jreal(s1.max_commutator)},
                   {"sum_residual", qspin::jreal(s1.sum_residual)},
                   {"spectrum_residual", qspin::jreal(spectrum_res)}}},
             {"wigner_categories", qspin::wigner_category_count(2)}};
    std::ostringstream text;
    text << "nine-operator square\n";
    text << "  row products:    " << sign_string(q.row_sign) << "  (residual "
         << qspin::fmt15(v.max_product_residual) << ")\n";
    text << "  column products: " << sign_string(q.col_sign) << "\n";
    text << "  value assignments satisfying all six sign constraints: " << col.satisfying << " of "
         << col.assignments_examined << "\n";
    text << "  assignments with every product forced to +1: " << col.relaxed_all_plus << "\n";
    text << "spin-1 squared components: max commutator " << qspin::fmt15(s1.max_commutator)
         << ", sum residual " << qspin::fmt15(s1.sum_residual) << "\n";
    text << "deterministic response categories for two settings per side: "
         << qspin::wigner_category_count(2) << "\n";
    emit(c, rep, text.str());
    return 0;
}

int run_decoherence(const Common& c, double overlap, std::size_t events) {
    const std::vector<double> curve = qspin::decay_curve(cx{overlap}, events);
    json jcurve = json::array();
    for (double v : curve) jcurve.push_back(qspin::jreal(v));

    json rep{{"command", "decoherence"},
             {"seed", c.seed},
             {"overlap", qspin::jreal(overlap)},
             {"events", events},
             {"initial", qspin::jreal(curve.front())},
             {"final", qspin::jreal(curve.back())},
             {"curve", jcurve}};
    std::ostringstream text;
    text << "off-diagonal coherence under repeated scattering, overlap " << qspin::fmt15(overlap)
         << "\n";
    text << "  before any event: " << qspin::fmt15(curve.front()) << "\n";
    text << "  after " << events << " events: " << qspin::fmt15(curve.back()) << "\n";

    if (!c.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t n = 0; n < curve.size(); ++n)
            rows.push_back({static_cast<double>(n), curve[n]});
        qspin::write_csv_atomic(c.csv_path, {"n", "coherence"}, rows);
        rep["csv"] = json{{"path", c.csv_path}, {"rows", rows.size()}};
        text << "  wrote " << rows.size() << " rows to " << c.csv_path << "\n";
    }
    emit(c, rep, text.str());
    return 0;
}

qspin::HistoryFamily default_family() {
    qspin::Mat p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const qspin::Mat px_plus = qspin::direction_projector(qspin::kPi / 2.0, +1);
    const qspin::Mat px_minus = qspin::direction_projector(qspin::kPi / 2.0, -1);
    return qspin::make_family(qspin::make_density(p0, {2}), qspin::identity_grid(2, 2),
                              {{px_plus, px_minus}, {p0, p1}});
}

int run_histories(const Common& c, const std::string& family_path, const std::string& mode_name) {
    qspin::HistoryFamily fam = default_family();
    if (!family_path.empty()) {
        std::ifstream f(family_path);
        if (!f) throw family_input_error("cannot open family file: " + family_path);
        json doc;
        try {
            doc = json::parse(f);
        } catch (const json::parse_error& e) {
            throw family_input_error(std::string("family JSON: ") + e.what());
        }
        try {
            fam = qspin::family_from_json(doc, c.tol);
        } catch (const qspin::error& e) {
            throw family_input_error(std::string("family document: ") + e.what());
        }
    }

    const qspin::ConsistencyMode mode =
        (mode_name == "weak") ? qspin::ConsistencyMode::weak : qspin::ConsistencyMode::strong;
    const std::vector<qspin::History> probs = qspin::family_probabilities(fam);
    double sum = 0.0;
    json jhist = json::array();
    for (const qspin::History& h : probs) {
        sum += h.prob;
        jhist.push_back(json{{"branch", h.branch}, {"prob", qspin::jreal(h.prob)}, {"zero", h.zero}});
    }
    const qspin::ConsistencyReport rc = qspin::consistency_matrix(fam, mode);
    const bool consistent = rc.max_violation <= c.tol;

    json rep{{"command", "histories"},
             {"seed", c.seed},
             {"mode", mode_name},
             {"n_histories", qspin::history_count(fam)},
             {"prob_sum", qspin::jreal(sum)},
             {"max_violation", qspin::jreal(rc.max_violation)},
             {"consistent", consistent},
             {"histories", jhist}};
    std::ostringstream text;
    text << (family_path.empty() ? "built-in transverse-then-longitudinal family"
                                 : "family from " + family_path)
         << "\n";
    text << "  histories: " << qspin::history_count(fam) << ", probability sum " << qspin::fmt15(sum)
         << "\n";
    text << "  " << mode_name << " consistency: max off-diagonal " << qspin::fmt15(rc.max_violation)
         << (consistent ? "  (consistent)" : "  (NOT consistent)") << "\n";
    emit(c, rep, text.str());
    return 0;
}

int run_nosignal(const Common& c) {
    const qspin::DensityOp rho_s = qspin::density_from_state(qspin::singlet());
    const qspin::NoSignalingReport fixed = qspin::no_signaling_check(
        rho_s,
        {qspin::sigma_z(), qspin::sigma_x(), qspin::direction_operator(1.234), qspin::Mat::identity(2)},
        qspin::sigma_z());
    double singlet_dev = std::max(fixed.max_choice_discrepancy, fixed.max_path_discrepancy);
    for (double p : fixed.marginal) singlet_dev = std::max(singlet_dev, std::abs(p - 0.5));

    qspin::Rng rng(c.seed);
    double max_choice = 0.0, max_path = 0.0, max_basis = 0.0;
    for (std::size_t rep_i = 0; rep_i < c.samples; ++rep_i) {
        const std::size_t db = (rep_i % 2 == 0) ? 2 : 4;
        const qspin::DensityOp rho = qspin::random_density(rng, {2, db});
        const std::vector<qspin::Mat> choices{qspin::random_hermitian(rng, 2), qspin::Mat::identity(2),
                                              qspin::direction_operator(rng.uniform(0.0, 2.0 * qspin::kPi))};
        const qspin::Mat o_b = qspin::random_hermitian(rng, db);
        const qspin::NoSignalingReport r = qspin::no_signaling_check(rho, choices, o_b);
        max_choice = std::max(max_choice, r.max_choice_discrepancy);
        max_path = std::max(max_path, r.max_path_discrepancy);

        std::vector<std::vector<std::vector<cx>>> bases;
        bases.push_back({{cx{1.0}, cx{0.0}}, {cx{0.0}, cx{1.0}}});
        const qspin::EigResult eb = qspin::eig_hermitian(qspin::random_hermitian(rng, 2));
        bases.push_back({{eb.vectors(0, 0), eb.vectors(1, 0)}, {eb.vectors(0, 1), eb.vectors(1, 1)}});
        max_basis = std::max(max_basis, qspin::basis_independence(rho, bases).max_difference);
    }

    json rep{{"command", "nosignal"},
             {"seed", c.seed},
             {"samples", c.samples},
             {"singlet_max_deviation", qspin::jreal(singlet_dev)},
             {"max_choice_discrepancy", qspin::jreal(max_choice)},
             {"max_path_discrepancy", qspin::jreal(max_path)},
             {"max_basis_difference", qspin::jreal(max_basis)}};
    std::ostringstream text;
    text << "marginal invariance under remote setting choices\n";
    text << "  singlet fixed check, max deviation from 1/2: " << qspin::fmt15(singlet_dev) << "\n";
    text << "  over " << c.samples << " random bipartite states:\n";
    text << "    max shift across observable choices: " << qspin::fmt15(max_choice) << "\n";
    text << "    max joint-path vs reduced-path gap:  " << qspin::fmt15(max_path) << "\n";
    text << "    max reduced-matrix basis difference: " << qspin::fmt15(max_basis) << "\n";
    emit(c, rep, text.str());
    return 0;
}

int run_verify_all(const Common& c) {
    const qspin::VerificationReport rep = qspin::run_verification(c.seed);
    if (c.as_json) {
        std::cout << qspin::verification_json(rep).dump(2) << "\n";
    } else {
        for (const auto& cr : rep.criteria) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "[%2d] %s  %-58s (%.3fs)\n", cr.id,
                          cr.passed ? "PASS" : "FAIL", cr.name.c_str(), cr.elapsed_s);
            std::cout << buf;
        }
        std::cout << (rep.all_passed() ? "all criteria passed\n" : "FAILURES present\n");
    }
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin correlation laboratory: entangled-pair predictions, local models, and histories"};
    app.require_subcommand(1);

    int rc = 0;

    Common c_chsh;
    bool optimize = false;
    auto* chsh = app.add_subcommand("chsh", "singlet correlations and the four-setting combination");
    add_base(chsh, c_chsh);
    add_samples(chsh, c_chsh, 360, "sweep points for the CSV table");
    add_grid(chsh, c_chsh, 64, 128, "grid points per angle for the optimizer");
    add_csv(chsh, c_chsh, "write the angle sweep as CSV to this path");
    chsh->add_flag("--optimize", optimize, "search for the settings maximizing |combination|");
    chsh->callback([&] { rc = run_chsh(c_chsh, optimize); });

    Common c_lhv;
    auto* lhv = app.add_subcommand("lhv", "seeded local model families and their bound");
    add_base(lhv, c_lhv);
    add_samples(lhv, c_lhv, 10000, "random models per family");
    lhv->callback([&] { rc = run_lhv(c_lhv); });

    Common c_ghz;
    auto* ghz = app.add_subcommand("ghz", "three-spin certainties and the parity contradiction");
    add_base(ghz, c_ghz);
    add_samples(ghz, c_ghz, 360, "sweep points for the CSV table");
    add_csv(ghz, c_ghz, "write the transverse correlation sweep as CSV to this path");
    ghz->callback([&] { rc = run_ghz(c_ghz); });

    Common c_aon;
    std::size_t sites = 4;
    double phi = 0.0;
    auto* aon = app.add_subcommand("allornothing", "n-site coherent superpositions and their cosine law");
    add_base(aon, c_aon);
    add_samples(aon, c_aon, 100, "random angle sets for the residual check");
    add_csv(aon, c_aon, "write the E vs sum-of-angles sweep as CSV to this path");
    aon->add_option("--sites", sites, "number of sites")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{12}));
    aon->add_option("--phi", phi, "relative phase of the two branches")->capture_default_str();
    aon->callback([&] { rc = run_allornothing(c_aon, sites, phi); });

    Common c_hardy;
    auto* hardy = app.add_subcommand("hardy", "maximize the probability of the excluded event");
    add_base(hardy, c_hardy);
    add_samples(hardy, c_hardy, 1000, "sweep points for the exclusion check");
    add_grid(hardy, c_hardy, 256, 100000, "grid points for the maximizer");
    add_csv(hardy, c_hardy, "write the probability curve as CSV to this path");
    hardy->callback([&] { rc = run_hardy(c_hardy); });

    Common c_bks;
    auto* bks = app.add_subcommand("bks", "operator square products and the coloring search");
    add_base(bks, c_bks);
    bks->callback([&] { rc = run_bks(c_bks); });

    Common c_deco;
    double overlap = 0.99;
    std::size_t events = 100;
    auto* deco = app.add_subcommand("decoherence", "coherence decay under repeated scattering");
    add_base(deco, c_deco);
    add_csv(deco, c_deco, "write the (n, coherence) series as CSV to this path");
    deco->add_option("--overlap", overlap, "scattered-mode overlap per event")
        ->capture_default_str()
        ->check(CLI::Range(-1.0, 1.0));
    deco->add_option("--events", events, "number of scattering events")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{0}, std::size_t{100000}));
    deco->callback([&] { rc = run_decoherence(c_deco, overlap, events); });

    Common c_hist;
    std::string family_path;
    std::string mode_name = "strong";
    auto* hist = app.add_subcommand("histories", "family probabilities and consistency");
    add_base(hist, c_hist);
    hist->add_option("--family", family_path, "JSON document with rho0, times, unitaries, projector_sets");
    hist->add_option("--mode", mode_name, "consistency condition to test")
        ->capture_default_str()
        ->check(CLI::IsMember({"strong", "weak"}));
    hist->callback([&] { rc = run_histories(c_hist, family_path, mode_name); });

    Common c_nosig;
    auto* nosig = app.add_subcommand("nosignal", "marginal invariance under remote choices");
    add_base(nosig, c_nosig);
    add_samples(nosig, c_nosig, 100, "random bipartite states to test");
    nosig->callback([&] { rc = run_nosignal(c_nosig); });

    Common c_verify;
    auto* verify = app.add_subcommand("verify-all", "run the full acceptance battery");
    add_base(verify, c_verify);
    verify->callback([&] { rc = run_verify_all(c_verify); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const family_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qspin::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
