#include "olk/io.hpp"

#include <fstream>
#include <stdexcept>

namespace olk {

namespace {

json real_array(const std::vector<real>& v) {
    json a = json::array();
    for (real x : v) a.push_back(double(x));
    return a;
}

std::vector<real> reals_of(const json& a) {
    if (!a.is_array()) throw std::invalid_argument("io: expected an array of numbers");
    std::vector<real> v;
    v.reserve(a.size());
    for (const auto& x : a) v.push_back(real(x.get<double>()));
    return v;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("io: cannot open " + path);
    json j;
    in >> j;
    return j;
}

json divergence_array(const std::vector<BlockDivergence>& ds) {
    json a = json::array();
    for (const auto& d : ds) a.push_back(to_json(d));
    return a;
}

} // namespace

json to_json(const StepFunction& f) {
    return {{"breaks", real_array(f.breaks())}, {"values", real_array(f.values())}};
}

StepFunction step_from_json(const json& j) {
    return StepFunction(reals_of(j.at("breaks")), reals_of(j.at("values")));
}

StepFunction load_step(const std::string& path) { return step_from_json(load_file(path)); }

json to_json(const Weight& w) { return to_json(w.fn()); }

Weight weight_from_json(const json& j) {
    return Weight(reals_of(j.at("breaks")), reals_of(j.at("values")));
}

Weight load_weight(const std::string& path) { return weight_from_json(load_file(path)); }

json to_json(const LevelInterval& iv) {
    return {{"a", double(iv.a)}, {"b", double(iv.b)}, {"ratio", double(iv.ratio)}};
}

json to_json(const LevelDecomposition& dec) {
    json ivs = json::array();
    for (const auto& iv : dec.intervals) ivs.push_back(to_json(iv));
    return {{"source", to_json(dec.source)},
            {"weight", to_json(dec.weight)},
            {"intervals", ivs},
            {"level", to_json(dec.level)},
            {"inverse_weight", to_json(dec.inverse_weight)}};
}

json to_json(const LevelCrosscheck& c) {
    return {{"max_deviation", double(c.max_deviation)}, {"ok", c.ok}};
}

json to_json(const NormResult& r) {
    return {{"value", double(r.value)},
            {"modular_at_value", double(r.modular_at_value)},
            {"iterations", r.iterations}};
}

json to_json(const OrliczNormResult& r) {
    return {{"value", double(r.value)},
            {"kind", r.kind == OrliczNormKind::attained ? "attained" : "limit"},
            {"k_star", double(r.k.k_star)},
            {"k_star_star", double(r.k.k_double_star)},
            {"unbounded_above", r.k.unbounded_above},
            {"modular_at_witness", double(r.modular_at_witness)}};
}

json to_json(const PResult& r) {
    const char* mode = r.mode == PMode::via_q        ? "via_q"
                       : r.mode == PMode::convex_opt ? "convex_opt"
                                                     : "grid_oracle";
    return {{"value", double(r.value)}, {"mode", mode}, {"v", to_json(r.v)}};
}

json to_json(const FundamentalResult& r) {
    return {{"t", double(r.t)},
            {"lambda_lux", double(r.lambda_lux)},
            {"lambda_orlicz", double(r.lambda_orlicz)},
            {"m_lux", double(r.m_lux)},
            {"m_orlicz", double(r.m_orlicz)}};
}

json to_json(const Delta2Report& r) {
    json w;
    if (r.witness) w = double(*r.witness);
    return {{"pass", r.pass},
            {"witness", w},
            {"ratio_at_witness", double(r.ratio_at_witness)},
            {"grid", real_array(r.grid)}};
}

json to_json(const OrderReport& r) {
    json w;
    if (r.witness) w = double(*r.witness);
    return {{"pass", r.pass}, {"witness", w}};
}

json to_json(const HolderReport& r) {
    return {{"pairing", double(r.pairing)},
            {"pairing_star", double(r.pairing_star)},
            {"bound_lux_orlicz", double(r.bound_lux_orlicz)},
            {"bound_orlicz_lux", double(r.bound_orlicz_lux)},
            {"holds", r.holds}};
}

json to_json(const DualNormCertificate& c) {
    return {{"value", double(c.value)},
            {"witness", to_json(c.witness)},
            {"witness_modular", double(c.witness_modular)},
            {"candidates", c.candidates}};
}

json to_json(const AttainmentReport& r) {
    return {{"norm_functional", double(r.norm_functional)},
            {"residual_i", double(r.residual_i)},
            {"residual_ii", double(r.residual_ii)},
            {"residual_iii", double(r.residual_iii)},
            {"alignment", double(r.alignment)},
            {"attained", r.attained}};
}

json to_json(const ExtensionGapReport& r) {
    return {{"g_at_1", double(r.g_at_1)},
            {"lambda0", double(r.lambda0)},
            {"gap_present", r.gap_present},
            {"unbounded", r.unbounded}};
}

json to_json(const BlockDivergence& d) {
    return {{"terms", real_array(d.terms)},
            {"partials", real_array(d.partials)},
            {"terms_to_exceed", d.terms_to_exceed},
            {"trend_positive", d.trend_positive}};
}

json to_json(const PathologyFamily& fam) {
    json blocks = json::array();
    for (const auto& f : fam.f_blocks) blocks.push_back(to_json(f));
    json ns = json::array();
    for (int n : fam.n_seq) ns.push_back(n);
    return {{"phi", fam.phi.describe()},
            {"w", to_json(fam.w)},
            {"u_seq", real_array(fam.u_seq)},
            {"t_seq", real_array(fam.t_seq)},
            {"k_count", fam.k_count},
            {"depth", fam.depth},
            {"n_seq", ns},
            {"offsets", real_array(fam.offsets)},
            {"blocks", blocks}};
}

json to_json(const FamilyReport& r) {
    return {{"q_blocks", real_array(r.q_blocks)},
            {"divergence", divergence_array(r.divergence)},
            {"sum_norm", double(r.sum_norm)},
            {"tol_trunc", double(r.tol_trunc)},
            {"q_mass_dropped", double(r.q_mass_dropped)},
            {"norm_in_window", r.norm_in_window}};
}

json to_json(const LinfReport& r) {
    return {{"k0", r.k0},
            {"upper_lhs", double(r.upper_lhs)},
            {"upper_rhs", double(r.upper_rhs)},
            {"upper_holds", r.upper_holds},
            {"lower", to_json(r.lower)},
            {"lower_evidence", r.lower_evidence}};
}

json to_json(const ComparisonReport& r) {
    return {{"order_holds", r.order_holds},
            {"failed_at", r.failed_at},
            {"a_seq", real_array(r.a_seq)},
            {"t_seq", real_array(r.t_seq)},
            {"f", to_json(r.f)},
            {"q2", double(r.q2)},
            {"eps_list", real_array(r.eps_list)},
            {"divergence", divergence_array(r.divergence)}};
}

json to_json(const EmbeddingReport& r) {
    return {{"lhs", double(r.lhs)},
            {"rhs", double(r.rhs)},
            {"big_m", double(r.big_m)},
            {"e0", double(r.e0)},
            {"order_verified", r.order_verified},
            {"holds", r.holds}};
}

json to_json(const CheckResult& c) {
    return {{"name", c.name},
            {"cases", c.cases},
            {"failures", c.failures},
            {"worst_residual", double(c.worst_residual)}};
}

json to_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"seed", r.seed},
            {"cases", r.cases},
            {"checks", checks},
            {"failures", r.total_failures()},
            {"passed", r.all_passed()}};
}

} // namespace olk
