#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "bell.hpp"
#include "bks.hpp"
#include "decoherence.hpp"
#include "ghz.hpp"
#include "hardy.hpp"
#include "histories.hpp"
#include "io.hpp"
#include "nosignal.hpp"
#include "rng.hpp"

namespace qspin {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    json detail;       // deterministic values only
    double elapsed_s;  // human output only, never serialized
};

struct VerificationReport {
    std::uint64_t seed;
    std::vector<CriterionResult> criteria;

    bool all_passed() const {
        for (const auto& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline Rng criterion_rng(std::uint64_t seed, int id) {
    return Rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(id)));
}

inline constexpr double kSqrt8 = 2.8284271247461903;  // 2 sqrt 2

inline CriterionResult check_chsh_optimizer(std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    const ChshResult r = chsh_optimize(singlet(), 64);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double dev = std::abs(std::abs(r.value) - kSqrt8);
    const bool in_budget = elapsed < 1.0;
    CriterionResult c{1, "chsh optimizer reaches the quantum maximum", dev < 1e-6 && in_budget, {}, elapsed};
    c.detail = {{"abs_value", jreal(std::abs(r.value))},
                {"target", jreal(kSqrt8)},
                {"deviation", jreal(dev)},
                {"runtime_within_budget", in_budget}};
    return c;
}

inline CriterionResult check_singlet_law(std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    const StateVector s = singlet();
    double max_res = 0.0;
    for (int k = 0; k < 360; ++k) {
        const double theta = 2.0 * kPi * k / 360.0;
        for (const double b : {0.0, 0.7}) {
            const PairProbs p = pair_probs(s, theta + b, b);
            const double same = 0.5 * sqr(std::sin(theta / 2.0));
            const double diff = 0.5 * sqr(std::cos(theta / 2.0));
            max_res = std::max({max_res, std::abs(p.pp - same), std::abs(p.mm - same),
                                std::abs(p.pm - diff), std::abs(p.mp - diff),
                                std::abs(correlation(p) + std::cos(theta))});
        }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{2, "singlet joint probabilities and correlation law", max_res < 1e-12, {}, elapsed};
    c.detail = {{"sweep_points", 360}, {"max_residual", jreal(max_res)}};
    return c;
}

inline CriterionResult check_local_bound(std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = criterion_rng(seed, 3);
    double max_det = 0.0, max_sto = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const LocalDeterministicModel m = random_deterministic_model(rng);
        max_det = std::max(max_det, std::abs(lhv_chsh(m)));
    }
    for (int i = 0; i < 10000; ++i) {
        const StochasticLocalModel m = random_stochastic_model(rng);
        const ChshSettings s{rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi),
                             rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi)};
        max_sto = std::max(max_sto, std::abs(stochastic_local_chsh(m, s)));
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = elapsed < 10.0;
    CriterionResult c{3, "local models respect the bound of two",
                      max_det <= 2.0 && max_sto <= 2.0 + 1e-12 && in_budget, {}, elapsed};
    c.detail = {{"samples_each", 10000},
                {"max_abs_deterministic", jreal(max_det)},
                {"max_abs_stochastic", jreal(max_sto)},
                {"runtime_within_budget", in_budget}};
    return c;
}

inline CriterionResult check_ghz(std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double max_dev = 0.0;
    for (const double eta : {-1.0, +1.0}) {
        const StateVector g = ghz3(cx{eta});
        const std::vector<std::vector<Axis>> mixed = {{axis_x(), axis_y(), axis_y()},
                                                      {axis_y(), axis_x(), axis_y()},
                                                      {axis_y(), axis_y(), axis_x()}};
        for (const auto& axes : mixed) {
            const ProductExpectation e = product_op_expectation(g, axes);
            ok = ok && e.is_eigen;
            max_dev = std::max(max_dev, std::abs(e.expectation - (-eta)));
        }
        const ProductExpectation x3 = product_op_expectation(g, {axis_x(), axis_x(), axis_x()});
        ok = ok && x3.is_eigen;
        max_dev = std::max(max_dev, std::abs(x3.expectation - eta));
    }
    const LocalRealistParity lr = local_realist_parity();
    ok = ok && max_dev < 1e-12 && lr.assignments == 64 && lr.satisfying == 8 && lr.forced_product == +1 &&
         std::abs(lr.quantum_xxx + 1.0) < 1e-12 && lr.contradiction;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{4, "three-spin certainties force the parity contradiction", ok, {}, elapsed};
    c.detail = {{"max_eigenvalue_deviation", jreal(max_dev)},
                {"assignments", lr.assignments},
                {"satisfying", lr.satisfying},
                {"forced_product", lr.forced_product},
                {"quantum_xxx", jreal(lr.quantum_xxx)}};
    return c;
}

inline CriterionResult check_all_or_nothing(std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = criterion_rng(seed, 5);
    double max_cos_res = 0.0, max_coherence = 0.0;
    for (std::size_t n = 2; n <= 10; ++n) {
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const AllOrNothingState a = aon_max_corr(n, phi);
        const StateVector psi = aon_state(a);
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<double> thetas(n);
            double sum = 0.0;
            for (auto& t : thetas) {
                t = rng.uniform(0.0, 2.0 * kPi);
                sum += t;
            }
            const double e = transverse_correlation(psi, thetas);
            max_cos_res = std::max(max_cos_res, std::abs(e - std::cos(sum - phi)));
        }
        max_coherence = std::max(max_coherence, subsystem_coherence(psi, n - 1));
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{5, "all-or-nothing cosine law and vanishing reduced coherence",
                      max_cos_res < 1e-10 && max_coherence < 1e-12, {}, elapsed};
    c.detail = {{"sites", "2..10"},
                {"angle_sets_per_size", 100},
                {"max_cosine_residual", jreal(max_cos_res)},
                {"max_reduced_coherence", jreal(max_coherence)}};
    return c;
}

inline CriterionResult check_hardy(std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    const HardyMax m = hardy_maximize();
    const double target = (5.0 * std::sqrt(5.0) - 11.0) / 2.0;
    double max_excl = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double theta = (kPi / 2.0) * k / 1000.0;
        max_excl = std::max(max_excl, max_residual(verify_exclusions(hardy_state(theta))));
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{6, "hardy probability peaks at the closed-form maximum",
                      std::abs(m.p_star - target) < 1e-6 && max_excl < 1e-12, {}, elapsed};
    c.detail = {{"theta_star", jreal(m.theta_star)},
                {"p_star", jreal(m.p_star)},
                {"target", jreal(target)},
                {"sweep_points", 999},
                {"max_exclusion_residual", jreal(max_excl)}};
    return c;
}

inline CriterionResult check_bks(std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    const OperatorSquare q = mermin_square();
    const SquareValidation v = validate(q);
    const ColoringReport col = coloring_search(q);
    const Spin1Squares s1 = spin1_squares();
    double eig_res = 0.0;
    for (const Mat* m : {&s1.sx2, &s1.sy2, &s1.sz2}) {
        const EigResult e = eig_hermitian(*m);
        eig_res = std::max({eig_res, std::abs(e.values[0]), std::abs(e.values[1] - 1.0),
                            std::abs(e.values[2] - 1.0)});
    }
    const bool ok = v.max_product_residual < 1e-12 && v.max_commutator < 1e-12 &&
                    v.max_square_residual < 1e-12 && col.satisfying == 0 && col.relaxed_all_plus == 16 &&
                    s1.max_commutator < 1e-12 && s1.sum_residual < 1e-12 && eig_res < 1e-12 &&
                    wigner_category_count(2) == 16;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{7, "operator square admits no consistent coloring", ok, {}, elapsed};
    c.detail = {{"assignments_examined", col.assignments_examined},
                {"satisfying", col.satisfying},
                {"relaxed_all_plus", col.relaxed_all_plus},
                {"max_product_residual", jreal(v.max_product_residual)},
                {"spin1_sum_residual", jreal(s1.sum_residual)},
                {"categories", wigner_category_count(2)}};
    return c;
}

inline CriterionResult check_decoherence(std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = criterion_rng(seed, 8);
    double max_res = 0.0;
    int sets = 0;
    for (std::size_t photons = 0; photons <= 6; ++photons) {
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t atoms = 1 + rng.integer(3);
            const double phase = rng.uniform(0.0, 2.0 * kPi);
            const double amp = std::sqrt(rng.uniform());
            const cx alpha{amp};
            const cx beta = std::sqrt(std::max(0.0, 1.0 - amp * amp)) * std::exp(cx{0.0, phase});
            std::vector<cx> overlaps(photons);
            for (auto& g : overlaps) {
                if (rep == 0) {
                    g = cx{1.0};
                } else {
                    const double mod = rng.uniform();
                    g = mod * std::exp(cx{0.0, rng.uniform(0.0, 2.0 * kPi)});
                }
            }
            const DensityOp predicted = reduced_after_scattering(alpha, beta, overlaps);
            const StateVector full = entangled_env_state(atoms, alpha, beta, overlaps);
            std::vector<std::size_t> keep(atoms);
            for (std::size_t i = 0; i < atoms; ++i) keep[i] = i;
            const DensityOp traced = partial_trace(full, keep);
            const std::size_t last = traced.dim() - 1;
            double res = 0.0;
            for (std::size_t i = 0; i < traced.dim(); ++i)
                for (std::size_t j = 0; j < traced.dim(); ++j) {
                    cx want = 0.0;
                    if (i == 0 && j == 0) want = predicted.mat(0, 0);
                    else if (i == last && j == last) want = predicted.mat(1, 1);
                    else if (i == 0 && j == last) want = predicted.mat(0, 1);
                    else if (i == last && j == 0) want = predicted.mat(1, 0);
                    res = std::max(res, std::abs(traced.mat(i, j) - want));
                }
            max_res = std::max(max_res, res);
            ++sets;
        }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{8, "scattering overlap product matches the traced environment", max_res < 1e-12, {}, elapsed};
    c.detail = {{"overlap_sets", sets}, {"max_residual", jreal(max_res)}};
    return c;
}

inline CriterionResult check_histories(std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = criterion_rng(seed, 9);

    // random complete families: probabilities sum to one
    double max_sum_res = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 2 + rng.integer(3);
        const std::size_t k = 1 + rng.integer(3);
        TimeGrid grid;
        for (std::size_t i = 0; i < k; ++i) {
            grid.times.push_back(static_cast<double>(i + 1));
            grid.step_unitaries.push_back(evolution_unitary(random_hermitian(rng, d), 0.7));
        }
        std::vector<std::vector<Mat>> sets;
        for (std::size_t i = 0; i < k; ++i) {
            const EigResult basis = eig_hermitian(random_hermitian(rng, d));
            std::vector<Mat> set;
            std::size_t start = 0;
            while (start < d) {
                const std::size_t len = 1 + rng.integer(d - start);
                Mat p(d, d);
                for (std::size_t c = start; c < start + len; ++c) {
                    std::vector<cx> v(d);
                    for (std::size_t r = 0; r < d; ++r) v[r] = basis.vectors(r, c);
                    p = p + outer(v, v);
                }
                set.push_back(std::move(p));
                start += len;
            }
            sets.push_back(std::move(set));
        }
        const HistoryFamily fam =
            make_family(random_density(rng, {d}), std::move(grid), std::move(sets));
        double sum = 0.0;
        for (const History& h : family_probabilities(fam)) sum += h.prob;
        max_sum_res = std::max(max_sum_res, std::abs(sum - 1.0));
    }

    // sequence probability equals the chop-and-propagate squared norm
    double max_slice_res = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t d = 2 + rng.integer(7);
        const std::size_t k = 1 + rng.integer(3);
        TimeGrid grid;
        std::vector<Mat> choice;
        const StateVector psi0 = random_state(rng, {d});
        std::vector<cx> cur = psi0.amps;
        for (std::size_t i = 0; i < k; ++i) {
            grid.times.push_back(static_cast<double>(i + 1));
            const Mat u = evolution_unitary(random_hermitian(rng, d), 0.3 + 0.2 * static_cast<double>(i));
            grid.step_unitaries.push_back(u);
            const EigResult basis = eig_hermitian(random_hermitian(rng, d));
            const std::size_t len = 1 + rng.integer(d);
            Mat p(d, d);
            for (std::size_t c = 0; c < len; ++c) {
                std::vector<cx> v(d);
                for (std::size_t r = 0; r < d; ++r) v[r] = basis.vectors(r, c);
                p = p + outer(v, v);
            }
            choice.push_back(p);
            cur = act(p, act(u, cur));
        }
        const double sliced = norm2(cur);
        const double wigner = sequence_prob(density_from_state(psi0), grid, choice);
        max_slice_res = std::max(max_slice_res, std::abs(wigner - sliced));
    }

    // the transverse-then-longitudinal qubit family: violation exactly 1/4
    Mat p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const Mat px_plus = direction_projector(kPi / 2.0, +1);
    const Mat px_minus = direction_projector(kPi / 2.0, -1);
    const HistoryFamily fam_xz = make_family(make_density(p0, {2}), identity_grid(2, 2),
                                             {{px_plus, px_minus}, {p0, p1}});
    const double viol = consistency_matrix(fam_xz, ConsistencyMode::strong).max_violation;
    const double two_time = sequence_prob(make_density(p0, {2}), identity_grid(2, 2), {px_plus, p1});

    // coarse-graining the inconsistent family breaks additivity by twice the
    // interference term
    const AdditivityReport add = coarse_grain_additivity(fam_xz, {{{0, 1}}, {{0}, {1}}});
    const InterferenceSplit split = interference_split(make_density(p0, {2}), {px_plus, px_minus}, p1);
    const double delta_vs_crossed = std::abs(add.deltas[1] - split.crossed.real());

    // eigenbasis families stay consistent, also after coarse-graining
    double max_consistency = 0.0, max_add = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        TimeGrid grid;
        for (std::size_t i = 0; i < 3; ++i) {
            grid.times.push_back(static_cast<double>(i + 1));
            grid.step_unitaries.push_back(evolution_unitary(random_hermitian(rng, 4), 0.5));
        }
        const HistoryFamily fam = build_consistent_family(random_density(rng, {4}), grid);
        max_consistency = std::max(max_consistency,
                                   consistency_matrix(fam, ConsistencyMode::strong).max_violation);
        const std::vector<std::vector<std::vector<std::size_t>>> groups(
            3, std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
        max_consistency = std::max(
            max_consistency, consistency_matrix(coarse_grain(fam, groups), ConsistencyMode::strong).max_violation);
        max_add = std::max(max_add, coarse_grain_additivity(fam, groups).max_abs_delta);
    }

    const bool ok = max_sum_res < 1e-12 && max_slice_res < 1e-12 && std::abs(viol - 0.25) < 1e-12 &&
                    std::abs(two_time - 0.25) < 1e-12 && delta_vs_crossed < 1e-12 &&
                    max_consistency < 1e-12 && max_add < 1e-10;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{9, "history probabilities, consistency, and coarse-graining", ok, {}, elapsed};
    c.detail = {{"max_prob_sum_residual", jreal(max_sum_res)},
                {"max_slicing_residual", jreal(max_slice_res)},
                {"transverse_family_violation", jreal(viol)},
                {"two_time_probability", jreal(two_time)},
                {"delta_vs_crossed_residual", jreal(delta_vs_crossed)},
                {"max_eigenbasis_violation", jreal(max_consistency)},
                {"max_additivity_defect", jreal(max_add)}};
    return c;
}

inline CriterionResult check_no_signaling(std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = criterion_rng(seed, 10);

    // fixed check: the singlet marginal stays (1/2, 1/2) whatever is measured
    const DensityOp rho_s = density_from_state(singlet());
    const NoSignalingReport fixed = no_signaling_check(
        rho_s, {sigma_z(), sigma_x(), direction_operator(1.234), Mat::identity(2)}, sigma_z());
    double singlet_dev = std::max(fixed.max_choice_discrepancy, fixed.max_path_discrepancy);
    for (double p : fixed.marginal) singlet_dev = std::max(singlet_dev, std::abs(p - 0.5));

    double max_choice = 0.0, max_path = 0.0, max_basis = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t db = (rep % 2 == 0) ? 2 : 4;
        const DensityOp rho = random_density(rng, {2, db});
        const std::vector<Mat> choices{random_hermitian(rng, 2), Mat::identity(2),
                                       direction_operator(rng.uniform(0.0, 2.0 * kPi))};
        Mat o_b;
        if (rep % 3 == 0) {
            const std::vector<cx> u = random_unit_vector(rng, db);
            const std::vector<cx> v = random_unit_vector(rng, db);
            o_b = outer(u, v);
        } else {
            o_b = random_hermitian(rng, db);
        }
        const Mat herm_b = cx{0.5} * (o_b + dagger(o_b));
        const NoSignalingReport r = no_signaling_check(rho, choices, herm_b);
        max_choice = std::max(max_choice, r.max_choice_discrepancy);
        max_path = std::max(max_path, r.max_path_discrepancy);

        std::vector<std::vector<std::vector<cx>>> bases;
        bases.push_back({{cx{1.0}, cx{0.0}}, {cx{0.0}, cx{1.0}}});
        const EigResult eb = eig_hermitian(random_hermitian(rng, 2));
        bases.push_back({{eb.vectors(0, 0), eb.vectors(1, 0)}, {eb.vectors(0, 1), eb.vectors(1, 1)}});
        max_basis = std::max(max_basis, basis_independence(rho, bases).max_difference);
    }

    const bool ok = singlet_dev < 1e-12 && max_choice < 1e-12 && max_path < 1e-12 && max_basis < 1e-13;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult c{10, "distant measurement choices never shift the marginal", ok, {}, elapsed};
    c.detail = {{"singlet_max_deviation", jreal(singlet_dev)},
                {"max_choice_discrepancy", jreal(max_choice)},
                {"max_path_discrepancy", jreal(max_path)},
                {"max_basis_difference", jreal(max_basis)},
                {"samples", 100}};
    return c;
}

inline std::vector<CriterionResult> run_core_criteria(std::uint64_t seed) {
    return {check_chsh_optimizer(seed), check_singlet_law(seed),   check_local_bound(seed),
            check_ghz(seed),            check_all_or_nothing(seed), check_hardy(seed),
            check_bks(seed),            check_decoherence(seed),    check_no_signaling(seed),
            check_histories(seed)};
}

}  // namespace detail

// deterministic JSON body: seed, generator, per-criterion pass/fail and detail
inline json verification_json(const VerificationReport& rep) {
    json arr = json::array();
    for (const auto& c : rep.criteria)
        arr.push_back(json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return json{{"seed", rep.seed}, {"rng", Rng::name()}, {"criteria", std::move(arr)},
                {"all_passed", rep.all_passed()}};
}

// run every criterion, then re-run the whole battery and require the two JSON
// serializations to agree byte for byte
inline VerificationReport run_verification(std::uint64_t seed = kDefaultSeed) {
    VerificationReport rep{seed, detail::run_core_criteria(seed)};
    std::sort(rep.criteria.begin(), rep.criteria.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });

    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport again{seed, detail::run_core_criteria(seed)};
    std::sort(again.criteria.begin(), again.criteria.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    const std::string s1 = verification_json(rep).dump();
    const std::string s2 = verification_json(again).dump();
    const bool identical = (s1 == s2);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    CriterionResult c{11, "identical configuration reproduces byte-identical reports", identical, {}, elapsed};
    c.detail = {{"bytes", s1.size()}, {"identical", identical}};
    rep.criteria.push_back(std::move(c));
    return rep;
}

}  // namespace qspin
