#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "olk/duality.hpp"
#include "olk/io.hpp"
#include "olk/level.hpp"
#include "olk/modular.hpp"
#include "olk/orlicz.hpp"
#include "olk/pathology.hpp"
#include "olk/suite.hpp"

namespace py = pybind11;
using namespace olk;

namespace {

template <class T>
std::string repr_json(const T& x) {
    return to_json(x).dump();
}

} // namespace

PYBIND11_MODULE(olkit, m) {
    m.doc() = "Orlicz-Lorentz spaces and their Kothe duals on exact step functions";

    py::class_<StepFunction>(m, "StepFunction")
        .def(py::init<std::vector<real>, std::vector<real>>(), py::arg("breaks"),
             py::arg("values"))
        .def_static("zero", &StepFunction::zero, py::arg("T"))
        .def_static("constant", &StepFunction::constant, py::arg("c"), py::arg("T"))
        .def_static("indicator", &StepFunction::indicator, py::arg("c"), py::arg("a"),
                    py::arg("b"), py::arg("T") = -1.0)
        .def_property_readonly("breaks",
                               [](const StepFunction& f) { return f.breaks(); })
        .def_property_readonly("values",
                               [](const StepFunction& f) { return f.values(); })
        .def("cells", &StepFunction::cells)
        .def("domain_end", &StepFunction::domain_end)
        .def("value_at", &StepFunction::value_at, py::arg("t"))
        .def("is_zero", &StepFunction::is_zero)
        .def("scaled", &StepFunction::scaled, py::arg("c"))
        .def("plus", &StepFunction::plus, py::arg("g"))
        .def("times", &StepFunction::times, py::arg("g"))
        .def("extended_to", &StepFunction::extended_to, py::arg("T"))
        .def(
            "__eq__",
            [](const StepFunction& a, const StepFunction& b) { return a == b; },
            py::is_operator())
        .def("__repr__", &repr_json<StepFunction>);

    py::class_<Weight>(m, "Weight")
        .def(py::init<std::vector<real>, std::vector<real>>(), py::arg("breaks"),
             py::arg("values"))
        .def(py::init<StepFunction>(), py::arg("w"))
        .def("fn", [](const Weight& w) { return w.fn(); })
        .def("domain_end", &Weight::domain_end)
        .def("W", &Weight::W, py::arg("t"))
        .def("W_between", &Weight::W_between, py::arg("a"), py::arg("b"))
        .def("total", &Weight::total)
        .def("W_inverse", &Weight::W_inverse, py::arg("y"))
        .def("__repr__", &repr_json<Weight>);

    m.def("rearrange", &rearrange, py::arg("f"));
    m.def("integrate",
          py::overload_cast<const StepFunction&>(&integrate), py::arg("f"));
    m.def("integrate",
          py::overload_cast<const StepFunction&, real, real>(&integrate),
          py::arg("f"), py::arg("a"), py::arg("b"));
    m.def("submajorizes", &submajorizes, py::arg("g"), py::arg("f"));

    py::class_<ExtOrliczFunction>(m, "ExtOrliczFunction")
        .def_static("power", &ExtOrliczFunction::power, py::arg("p"),
                    py::arg("c") = 1.0)
        .def_static("exp_n", &ExtOrliczFunction::exp_n)
        .def_static("exp_plain", &ExtOrliczFunction::exp_plain)
        .def_static("exp_n_conj", &ExtOrliczFunction::exp_n_conj)
        .def_static("exp_plain_conj", &ExtOrliczFunction::exp_plain_conj)
        .def_static("piecewise", &ExtOrliczFunction::piecewise, py::arg("breaks"),
                    py::arg("slopes"), py::arg("v_inf") = kInf)
        .def_static("zero_jump", &ExtOrliczFunction::zero_jump, py::arg("v_inf"))
        .def("__call__", &ExtOrliczFunction::eval, py::arg("u"))
        .def("right_derivative", &ExtOrliczFunction::right_derivative, py::arg("u"))
        .def("inverse", &ExtOrliczFunction::inverse, py::arg("y"))
        .def("v_inf", &ExtOrliczFunction::v_inf)
        .def("finite_everywhere", &ExtOrliczFunction::finite_everywhere)
        .def("slope_at_infinity", &ExtOrliczFunction::slope_at_infinity)
        .def("conjugate", &ExtOrliczFunction::conjugate)
        .def("__repr__", &ExtOrliczFunction::describe);

    py::class_<OrliczFunction>(m, "OrliczFunction")
        .def(py::init<ExtOrliczFunction>(), py::arg("f"))
        .def_static("power", &OrliczFunction::power, py::arg("p"), py::arg("c") = 1.0)
        .def_static("exp_n", &OrliczFunction::exp_n)
        .def_static("exp_plain", &OrliczFunction::exp_plain)
        .def_static("exp_n_conj", &OrliczFunction::exp_n_conj)
        .def_static("piecewise", &OrliczFunction::piecewise, py::arg("breaks"),
                    py::arg("slopes"))
        .def("__call__", &OrliczFunction::eval, py::arg("u"))
        .def("right_derivative", &OrliczFunction::right_derivative, py::arg("u"))
        .def("inverse", &OrliczFunction::inverse, py::arg("y"))
        .def("complementary", &OrliczFunction::complementary)
        .def("ext", [](const OrliczFunction& phi) { return phi.ext(); })
        .def("is_n_function", &OrliczFunction::is_n_function)
        .def("__repr__", &OrliczFunction::describe);

    m.def("young_gap", &young_gap, py::arg("phi"), py::arg("u"), py::arg("v"));

    py::class_<Delta2Report>(m, "Delta2Report")
        .def_readonly("pass_", &Delta2Report::pass)
        .def_readonly("witness", &Delta2Report::witness)
        .def_readonly("ratio_at_witness", &Delta2Report::ratio_at_witness)
        .def("__repr__", &repr_json<Delta2Report>);
    m.def("delta2_probe", &delta2_probe, py::arg("phi"), py::arg("K"), py::arg("lo"),
          py::arg("hi"), py::arg("samples"), py::arg("l") = 2.0);

    py::class_<LevelInterval>(m, "LevelInterval")
        .def_readonly("a", &LevelInterval::a)
        .def_readonly("b", &LevelInterval::b)
        .def_readonly("ratio", &LevelInterval::ratio)
        .def("__repr__", &repr_json<LevelInterval>);
    py::class_<LevelDecomposition>(m, "LevelDecomposition")
        .def_readonly("source", &LevelDecomposition::source)
        .def_readonly("weight", &LevelDecomposition::weight)
        .def_readonly("intervals", &LevelDecomposition::intervals)
        .def_readonly("level", &LevelDecomposition::level)
        .def_readonly("inverse_weight", &LevelDecomposition::inverse_weight)
        .def("__repr__", &repr_json<LevelDecomposition>);
    py::class_<LevelCrosscheck>(m, "LevelCrosscheck")
        .def_readonly("max_deviation", &LevelCrosscheck::max_deviation)
        .def_readonly("ok", &LevelCrosscheck::ok)
        .def("__repr__", &repr_json<LevelCrosscheck>);
    m.def("halperin_level", &halperin_level, py::arg("f"), py::arg("w"));
    m.def("sinnamon_level", &sinnamon_level, py::arg("f"), py::arg("w"));
    m.def("crosscheck_level", &crosscheck_level, py::arg("f"), py::arg("w"),
          py::arg("tol") = 1e-10);

    py::enum_<Space>(m, "Space")
        .value("Lambda", Space::lambda)
        .value("M", Space::m);
    py::enum_<PMode>(m, "PMode")
        .value("via_q", PMode::via_q)
        .value("convex_opt", PMode::convex_opt)
        .value("grid_oracle", PMode::grid_oracle);

    m.def("rho_modular",
          py::overload_cast<const OrliczFunction&, const Weight&, const StepFunction&>(
              &rho_modular),
          py::arg("phi"), py::arg("w"), py::arg("f"));
    m.def("rho_modular",
          py::overload_cast<const ExtOrliczFunction&, const Weight&,
                            const StepFunction&>(&rho_modular),
          py::arg("phi"), py::arg("w"), py::arg("f"));
    m.def("q_modular",
          py::overload_cast<const OrliczFunction&, const Weight&, const StepFunction&>(
              &q_modular),
          py::arg("phi"), py::arg("w"), py::arg("f"));
    m.def("q_modular",
          py::overload_cast<const ExtOrliczFunction&, const Weight&,
                            const StepFunction&>(&q_modular),
          py::arg("phi"), py::arg("w"), py::arg("f"));
    m.def(
        "theta_bar",
        [](const OrliczFunction& phi, const Weight& w, const StepFunction& f) {
            return theta_bar(phi.ext(), w, f);
        },
        py::arg("phi"), py::arg("w"), py::arg("f"));

    py::class_<PResult>(m, "PResult")
        .def_readonly("value", &PResult::value)
        .def_readonly("v", &PResult::v)
        .def_readonly("mode", &PResult::mode)
        .def("__repr__", &repr_json<PResult>);
    m.def("p_modular",
          py::overload_cast<const OrliczFunction&, const Weight&, const StepFunction&,
                            PMode>(&p_modular),
          py::arg("phi"), py::arg("w"), py::arg("f"), py::arg("mode"));

    py::class_<NormResult>(m, "NormResult")
        .def_readonly("value", &NormResult::value)
        .def_readonly("modular_at_value", &NormResult::modular_at_value)
        .def_readonly("iterations", &NormResult::iterations)
        .def("__repr__", &repr_json<NormResult>);
    m.def("luxemburg_norm",
          py::overload_cast<const OrliczFunction&, const Weight&, const StepFunction&,
                            Space>(&luxemburg_norm),
          py::arg("phi"), py::arg("w"), py::arg("f"), py::arg("space"));
    m.def("luxemburg_norm",
          py::overload_cast<const ExtOrliczFunction&, const Weight&,
                            const StepFunction&, Space>(&luxemburg_norm),
          py::arg("phi"), py::arg("w"), py::arg("f"), py::arg("space"));

    py::enum_<OrliczNormKind>(m, "OrliczNormKind")
        .value("attained", OrliczNormKind::attained)
        .value("limit", OrliczNormKind::limit);
    py::class_<KInterval>(m, "KInterval")
        .def_readonly("k_star", &KInterval::k_star)
        .def_readonly("k_double_star", &KInterval::k_double_star)
        .def_readonly("unbounded_above", &KInterval::unbounded_above);
    py::class_<OrliczNormResult>(m, "OrliczNormResult")
        .def_readonly("value", &OrliczNormResult::value)
        .def_readonly("kind", &OrliczNormResult::kind)
        .def_readonly("k", &OrliczNormResult::k)
        .def_readonly("modular_at_witness", &OrliczNormResult::modular_at_witness)
        .def("__repr__", &repr_json<OrliczNormResult>);
    m.def("orlicz_norm", &orlicz_norm, py::arg("phi"), py::arg("w"), py::arg("f"),
          py::arg("space"));

    py::class_<FundamentalResult>(m, "FundamentalResult")
        .def_readonly("t", &FundamentalResult::t)
        .def_readonly("lambda_lux", &FundamentalResult::lambda_lux)
        .def_readonly("lambda_orlicz", &FundamentalResult::lambda_orlicz)
        .def_readonly("m_lux", &FundamentalResult::m_lux)
        .def_readonly("m_orlicz", &FundamentalResult::m_orlicz)
        .def("__repr__", &repr_json<FundamentalResult>);
    m.def("fundamental", &fundamental, py::arg("phi"), py::arg("w"), py::arg("t"));

    py::class_<HolderReport>(m, "HolderReport")
        .def_readonly("pairing", &HolderReport::pairing)
        .def_readonly("pairing_star", &HolderReport::pairing_star)
        .def_readonly("bound_lux_orlicz", &HolderReport::bound_lux_orlicz)
        .def_readonly("bound_orlicz_lux", &HolderReport::bound_orlicz_lux)
        .def_readonly("holds", &HolderReport::holds)
        .def("__repr__", &repr_json<HolderReport>);
    m.def("holder_audit", &holder_audit, py::arg("phi"), py::arg("w"), py::arg("f"),
          py::arg("g"));

    py::class_<DualNormCertificate>(m, "DualNormCertificate")
        .def_readonly("value", &DualNormCertificate::value)
        .def_readonly("witness", &DualNormCertificate::witness)
        .def_readonly("witness_modular", &DualNormCertificate::witness_modular)
        .def_readonly("candidates", &DualNormCertificate::candidates)
        .def("__repr__", &repr_json<DualNormCertificate>);
    m.def("dual_norm_oracle", &dual_norm_oracle, py::arg("phi"), py::arg("w"),
          py::arg("f"), py::arg("budget") = 16);

    m.def(
        "functional_norm",
        [](const OrliczFunction& phi, const Weight& w, const StepFunction& h,
           real s_norm, std::vector<std::pair<real, real>> s_oracle) {
            return functional_norm(phi, w,
                                   DualFunctional{h, s_norm, std::move(s_oracle)});
        },
        py::arg("phi"), py::arg("w"), py::arg("h"), py::arg("s_norm") = 0.0,
        py::arg("s_oracle") = std::vector<std::pair<real, real>>{});

    py::class_<AttainmentReport>(m, "AttainmentReport")
        .def_readonly("norm_functional", &AttainmentReport::norm_functional)
        .def_readonly("residual_i", &AttainmentReport::residual_i)
        .def_readonly("residual_ii", &AttainmentReport::residual_ii)
        .def_readonly("residual_iii", &AttainmentReport::residual_iii)
        .def_readonly("alignment", &AttainmentReport::alignment)
        .def_readonly("attained", &AttainmentReport::attained)
        .def("__repr__", &repr_json<AttainmentReport>);
    m.def("attainment_check", &attainment_check, py::arg("phi"), py::arg("w"),
          py::arg("f"), py::arg("h"), py::arg("s_norm"), py::arg("s_value_at_kf"),
          py::arg("k"));

    py::class_<ExtensionGapReport>(m, "ExtensionGapReport")
        .def_readonly("g_at_1", &ExtensionGapReport::g_at_1)
        .def_readonly("lambda0", &ExtensionGapReport::lambda0)
        .def_readonly("gap_present", &ExtensionGapReport::gap_present)
        .def_readonly("unbounded", &ExtensionGapReport::unbounded)
        .def("__repr__", &repr_json<ExtensionGapReport>);
    m.def("extension_gap", &extension_gap, py::arg("phi"), py::arg("w"), py::arg("h"),
          py::arg("s_norm"));

    py::class_<WitnessSequence>(m, "WitnessSequence")
        .def_readonly("u", &WitnessSequence::u)
        .def_readonly("complete", &WitnessSequence::complete)
        .def_readonly("failed_at", &WitnessSequence::failed_at);
    m.def("delta2_witness_sequence", &delta2_witness_sequence, py::arg("phi"),
          py::arg("n_max"), py::arg("lo") = 1.0, py::arg("hi") = 1e9);

    py::class_<PathologyFamily>(m, "PathologyFamily")
        .def_readonly("phi", &PathologyFamily::phi)
        .def_readonly("w", &PathologyFamily::w)
        .def_readonly("u_seq", &PathologyFamily::u_seq)
        .def_readonly("t_seq", &PathologyFamily::t_seq)
        .def_readonly("k_count", &PathologyFamily::k_count)
        .def_readonly("depth", &PathologyFamily::depth)
        .def_readonly("n_seq", &PathologyFamily::n_seq)
        .def_readonly("offsets", &PathologyFamily::offsets)
        .def_readonly("f_blocks", &PathologyFamily::f_blocks)
        .def("__repr__", &repr_json<PathologyFamily>);
    m.def("build_disjoint_family", &build_disjoint_family, py::arg("phi"),
          py::arg("w"), py::arg("u_seq"), py::arg("k_count"), py::arg("depth"));

    py::class_<BlockDivergence>(m, "BlockDivergence")
        .def_readonly("terms", &BlockDivergence::terms)
        .def_readonly("partials", &BlockDivergence::partials)
        .def_readonly("terms_to_exceed", &BlockDivergence::terms_to_exceed)
        .def_readonly("trend_positive", &BlockDivergence::trend_positive)
        .def("__repr__", &repr_json<BlockDivergence>);
    py::class_<FamilyReport>(m, "FamilyReport")
        .def_readonly("q_blocks", &FamilyReport::q_blocks)
        .def_readonly("divergence", &FamilyReport::divergence)
        .def_readonly("sum_norm", &FamilyReport::sum_norm)
        .def_readonly("tol_trunc", &FamilyReport::tol_trunc)
        .def_readonly("q_mass_dropped", &FamilyReport::q_mass_dropped)
        .def_readonly("norm_in_window", &FamilyReport::norm_in_window)
        .def("__repr__", &repr_json<FamilyReport>);
    m.def("verify_family", &verify_family, py::arg("family"), py::arg("s"),
          py::arg("threshold"));

    py::class_<LinfReport>(m, "LinfReport")
        .def_readonly("k0", &LinfReport::k0)
        .def_readonly("upper_lhs", &LinfReport::upper_lhs)
        .def_readonly("upper_rhs", &LinfReport::upper_rhs)
        .def_readonly("upper_holds", &LinfReport::upper_holds)
        .def_readonly("lower", &LinfReport::lower)
        .def_readonly("lower_evidence", &LinfReport::lower_evidence)
        .def("__repr__", &repr_json<LinfReport>);
    m.def("linf_embedding_check", &linf_embedding_check, py::arg("family"),
          py::arg("x"), py::arg("lam"));

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("order_holds", &ComparisonReport::order_holds)
        .def_readonly("failed_at", &ComparisonReport::failed_at)
        .def_readonly("a_seq", &ComparisonReport::a_seq)
        .def_readonly("t_seq", &ComparisonReport::t_seq)
        .def_readonly("f", &ComparisonReport::f)
        .def_readonly("q2", &ComparisonReport::q2)
        .def_readonly("eps_list", &ComparisonReport::eps_list)
        .def_readonly("divergence", &ComparisonReport::divergence)
        .def("__repr__", &repr_json<ComparisonReport>);
    m.def("comparison_counterexample", &comparison_counterexample, py::arg("phi1"),
          py::arg("phi2"), py::arg("w"), py::arg("n_max"), py::arg("eps_list"),
          py::arg("threshold") = 1e3);

    py::class_<EmbeddingReport>(m, "EmbeddingReport")
        .def_readonly("lhs", &EmbeddingReport::lhs)
        .def_readonly("rhs", &EmbeddingReport::rhs)
        .def_readonly("big_m", &EmbeddingReport::big_m)
        .def_readonly("e0", &EmbeddingReport::e0)
        .def_readonly("order_verified", &EmbeddingReport::order_verified)
        .def_readonly("holds", &EmbeddingReport::holds)
        .def("__repr__", &repr_json<EmbeddingReport>);
    m.def("embedding_forward_check", &embedding_forward_check, py::arg("phi1"),
          py::arg("phi2"), py::arg("w"), py::arg("f"), py::arg("b"), py::arg("u0"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("cases", &CheckResult::cases)
        .def_readonly("failures", &CheckResult::failures)
        .def_readonly("worst_residual", &CheckResult::worst_residual)
        .def("__repr__", &repr_json<CheckResult>);
    py::class_<SuiteReport>(m, "SuiteReport")
        .def_readonly("seed", &SuiteReport::seed)
        .def_readonly("cases", &SuiteReport::cases)
        .def_readonly("checks", &SuiteReport::checks)
        .def("total_failures", &SuiteReport::total_failures)
        .def("all_passed", &SuiteReport::all_passed)
        .def("__repr__", &repr_json<SuiteReport>);
    m.def("run_suite", &run_suite, py::arg("seed"), py::arg("cases"));
    m.def("suite_check_names", &suite_check_names);

    m.def("load_step", &load_step, py::arg("path"));
    m.def("load_weight", &load_weight, py::arg("path"));
}
