// Command-line front end: catalog listing, parameter sets, independence
// certificates, trace evaluation, Jacobian rank, and the Burnside test.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sl3trace/sl3trace.hpp"

namespace {

using nlohmann::json;
using namespace sl3trace;

json scalar_to_json(const Rational& v) { return v.to_string(); }
json scalar_to_json(const Complex& v) { return json::array({v.real(), v.imag()}); }

json invariant_to_json(const TraceInvariant& inv) {
    return json{{"word", inv.word().to_string()}, {"display", inv.display()}};
}

int run_generators(unsigned rank, bool as_json) {
    const GeneratorCatalog cat = generator_catalog(rank);
    if (as_json) {
        json rows = json::array();
        for (const auto& row : cat.rows)
            rows.push_back({{"shape", row.shape},
                            {"multiplicity", row.multiplicity},
                            {"subset_size", row.subset_size},
                            {"count", row.count}});
        std::cout << json{{"rank", cat.rank}, {"rows", rows}, {"total", cat.total}}.dump(2)
                  << '\n';
        return 0;
    }
    std::cout << "rank " << cat.rank << '\n';
    for (const auto& row : cat.rows)
        std::cout << row.shape << " multiplicity " << row.multiplicity << " subset "
                  << row.subset_size << " count " << row.count << '\n';
    std::cout << "total " << cat.total << '\n';
    return 0;
}

int run_params(int rank, const std::string& variant_text, bool as_json) {
    const Variant variant = variant_from_name(variant_text);
    const ParameterSet params = parameter_set(rank, variant);
    if (as_json) {
        json list = json::array();
        for (const TraceInvariant& inv : params.invariants) list.push_back(invariant_to_json(inv));
        std::cout << json{{"rank", params.rank},
                          {"variant", variant_name(params.variant)},
                          {"size", params.size()},
                          {"invariants", list}}
                         .dump(2)
                  << '\n';
        return 0;
    }
    std::cout << "rank " << params.rank << " variant " << variant_name(params.variant)
              << " size " << params.size() << '\n';
    for (const TraceInvariant& inv : params.invariants) std::cout << inv.display() << '\n';
    return 0;
}

// Swaps tr(X2^-1) for a second copy of tr(X2): a deliberately dependent set
// whose determinant must vanish identically. Kept for tests and demos.
void apply_duplicate_control(ParameterSet& params) {
    if (params.invariants.size() < 4) throw Error("parameter set too small for control");
    params.invariants[3] = params.invariants[1];
}

template <ScalarField S>
int run_certify_mode(int rank, const std::string& variant_text, int samples, std::uint64_t seed,
                     int height, bool duplicate_control, const std::string& out_path,
                     bool as_json) {
    const Variant variant = variant_from_name(variant_text);
    ParameterSet params = parameter_set(rank, variant);
    if (duplicate_control) apply_duplicate_control(params);
    const VariableSet vars = certification_variables(rank, variant);

    CertifyOptions options;
    options.num_samples = samples;
    options.seed = seed;
    options.height = height;
    const IndependenceCertificate<S> cert = certify_independence<S>(params, vars, options);

    const std::string text = write_certificate(cert);
    if (!out_path.empty()) write_text_file(out_path, text);
    if (as_json) {
        std::cout << json{{"rank", rank},
                          {"variant", variant_name(variant)},
                          {"mode", mode_name(cert.mode)},
                          {"verdict", verdict_name(cert.verdict)},
                          {"determinant", scalar_to_json(cert.determinant)},
                          {"seed", cert.seed},
                          {"height", cert.height},
                          {"sample_index", cert.sample_index},
                          {"samples_tried", cert.samples_tried}}
                         .dump(2)
                  << '\n';
    } else if (out_path.empty()) {
        std::cout << text;
    } else {
        std::cout << "verdict " << verdict_name(cert.verdict) << '\n';
    }
    return cert.verdict == Verdict::Independent ? 0 : 2;
}

int run_certify(int rank, const std::string& variant_text, int samples, std::uint64_t seed,
                int height, const std::string& mode_text, bool duplicate_control,
                const std::string& out_path, bool as_json) {
    if (mode_from_name(mode_text) == ScalarMode::ExactRational)
        return run_certify_mode<Rational>(rank, variant_text, samples, seed, height,
                                          duplicate_control, out_path, as_json);
    return run_certify_mode<Complex>(rank, variant_text, samples, seed, height,
                                     duplicate_control, out_path, as_json);
}

template <ScalarField S>
int run_eval_mode(const std::string& word_text, const std::string& tuple_text, bool as_json) {
    const TraceInvariant inv(GroupWord::parse(word_text));
    const MatrixTuple<S> tuple = parse_tuple<S>(tuple_text);
    const S value = eval_trace(inv, tuple);
    if (as_json) {
        std::cout << json{{"word", inv.word().to_string()},
                          {"display", inv.display()},
                          {"value", scalar_to_json(value)}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << ScalarTraits<S>::to_string(value) << '\n';
    }
    return 0;
}

int run_eval(const std::string& word_text, const std::string& tuple_path, bool as_json) {
    const std::string text = read_text_file(tuple_path);
    if (peek_mode(text) == ScalarMode::ExactRational)
        return run_eval_mode<Rational>(word_text, text, as_json);
    return run_eval_mode<Complex>(word_text, text, as_json);
}

template <ScalarField S>
int run_rank_mode(int rank, const std::string& variant_text, const std::string& tuple_text,
                  bool as_json) {
    const Variant variant = variant_from_name(variant_text);
    const ParameterSet params = parameter_set(rank, variant);
    const VariableSet vars = certification_variables(rank, variant);
    const MatrixTuple<S> tuple = parse_tuple<S>(tuple_text);
    const MagnusMap map{params.invariants};
    const int jrank = submersivity_rank(map, tuple, vars);
    if (as_json) {
        std::cout << json{{"rank", rank},
                          {"variant", variant_name(variant)},
                          {"functions", params.size()},
                          {"variables", vars.size()},
                          {"jacobian_rank", jrank}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << jrank << '\n';
    }
    return 0;
}

int run_rank(int rank, const std::string& variant_text, const std::string& tuple_path,
             bool as_json) {
    const std::string text = read_text_file(tuple_path);
    if (peek_mode(text) == ScalarMode::ExactRational)
        return run_rank_mode<Rational>(rank, variant_text, text, as_json);
    return run_rank_mode<Complex>(rank, variant_text, text, as_json);
}

template <ScalarField S>
int run_irreducible_mode(const std::string& tuple_text, bool as_json) {
    const MatrixTuple<S> tuple = parse_tuple<S>(tuple_text);
    const bool verdict = is_irreducible(tuple);
    if (as_json)
        std::cout << json{{"irreducible", verdict}}.dump(2) << '\n';
    else
        std::cout << (verdict ? "true" : "false") << '\n';
    return 0;
}

int run_irreducible(const std::string& tuple_path, bool as_json) {
    const std::string text = read_text_file(tuple_path);
    if (peek_mode(text) == ScalarMode::ExactRational)
        return run_irreducible_mode<Rational>(text, as_json);
    return run_irreducible_mode<Complex>(text, as_json);
}

template <ScalarField S>
int run_sample_mode(int rank, std::uint64_t seed, unsigned height, const std::string& out_path) {
    const MatrixTuple<S> tuple = sample_sl3_tuple<S>(seed, rank, height);
    const std::string text = write_tuple(tuple);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return 0;
}

int run_sample(int rank, std::uint64_t seed, unsigned height, const std::string& mode_text,
               const std::string& out_path) {
    if (mode_from_name(mode_text) == ScalarMode::ExactRational)
        return run_sample_mode<Rational>(rank, seed, height, out_path);
    return run_sample_mode<Complex>(rank, seed, height, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace invariants, generator catalogs, and independence certificates "
                 "for tuples of unimodular 3x3 matrices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sl3trace::kVersion));

    // generators
    unsigned gen_rank = 2;
    bool gen_json = false;
    auto* gen = app.add_subcommand("generators", "list the minimal-generator catalog for a rank");
    gen->add_option("--rank", gen_rank, "number of generators")->required();
    gen->add_flag("--json", gen_json, "machine-readable output");

    // params
    int par_rank = 2;
    std::string par_variant = "c1";
    bool par_json = false;
    auto* par = app.add_subcommand("params", "list a parameter set");
    par->add_option("--rank", par_rank, "number of generators")->required();
    par->add_option("--variant", par_variant, "c1..c5 or gl3");
    par->add_flag("--json", par_json, "machine-readable output");

    // certify
    int cer_rank = 2;
    std::string cer_variant = "c1";
    int cer_samples = 5;
    std::uint64_t cer_seed = 0;
    int cer_height = 10;
    std::string cer_mode = "exact";
    std::string cer_out;
    bool cer_json = false;
    bool cer_control = false;
    auto* cer = app.add_subcommand("certify", "certify algebraic independence of a parameter set");
    cer->add_option("--rank", cer_rank, "number of generators")->required();
    cer->add_option("--variant", cer_variant, "c1..c5 or gl3");
    cer->add_option("--samples", cer_samples, "number of random tuples to try");
    cer->add_option("--seed", cer_seed, "sampling seed");
    cer->add_option("--height", cer_height, "transvection entry height");
    cer->add_option("--mode", cer_mode, "exact or float");
    cer->add_option("--out", cer_out, "write the certificate to this file");
    cer->add_flag("--json", cer_json, "machine-readable output");
    cer->add_flag("--duplicate-control", cer_control)->group(""); // test hook, hidden

    // eval
    std::string ev_word;
    std::string ev_tuple;
    bool ev_json = false;
    auto* ev = app.add_subcommand("eval", "evaluate tr(word) on a tuple file");
    ev->add_option("--word", ev_word, "word tokens, e.g. \"1 2 -1\"")->required();
    ev->add_option("--tuple", ev_tuple, "tuple file path")->required();
    ev->add_flag("--json", ev_json, "machine-readable output");

    // rank
    int rk_rank = 2;
    std::string rk_variant = "c1";
    std::string rk_tuple;
    bool rk_json = false;
    auto* rk = app.add_subcommand("rank", "Jacobian rank of a parameter set at a tuple");
    rk->add_option("--rank", rk_rank, "number of generators")->required();
    rk->add_option("--variant", rk_variant, "c1..c5 or gl3");
    rk->add_option("--tuple", rk_tuple, "tuple file path")->required();
    rk->add_flag("--json", rk_json, "machine-readable output");

    // irreducible
    std::string ir_tuple;
    bool ir_json = false;
    auto* ir = app.add_subcommand("irreducible", "Burnside irreducibility test for a tuple file");
    ir->add_option("--tuple", ir_tuple, "tuple file path")->required();
    ir->add_flag("--json", ir_json, "machine-readable output");

    // sample
    int sa_rank = 2;
    std::uint64_t sa_seed = 0;
    unsigned sa_height = 10;
    std::string sa_mode = "exact";
    std::string sa_out;
    auto* sa = app.add_subcommand("sample", "draw a random unimodular tuple");
    sa->add_option("--rank", sa_rank, "number of generators")->required();
    sa->add_option("--seed", sa_seed, "sampling seed");
    sa->add_option("--height", sa_height, "transvection entry height");
    sa->add_option("--mode", sa_mode, "exact or float");
    sa->add_option("--out", sa_out, "write the tuple to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_generators(gen_rank, gen_json);
        if (par->parsed()) return run_params(par_rank, par_variant, par_json);
        if (cer->parsed())
            return run_certify(cer_rank, cer_variant, cer_samples, cer_seed, cer_height, cer_mode,
                               cer_control, cer_out, cer_json);
        if (ev->parsed()) return run_eval(ev_word, ev_tuple, ev_json);
        if (rk->parsed()) return run_rank(rk_rank, rk_variant, rk_tuple, rk_json);
        if (ir->parsed()) return run_irreducible(ir_tuple, ir_json);
        if (sa->parsed()) return run_sample(sa_rank, sa_seed, sa_height, sa_mode, sa_out);
    } catch (const std::exception& e) {
        std::cerr << "sl3trace: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
