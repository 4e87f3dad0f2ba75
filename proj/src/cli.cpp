#include "rmf/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmf/conditioning.hpp"
#include "rmf/eigensolve.hpp"
#include "rmf/io.hpp"
#include "rmf/structure.hpp"
#include "rmf/verify.hpp"

namespace rmf {

namespace {

struct Tolerances {
    double eig_tol = 1e-8;
    double struct_tol = 1e-10;
    double pole_tol = 1e-8;
};

std::optional<StructureTag> pick_tag(const RationalMatrixFunction& G,
                                     const std::string& flag_value) {
    if (!flag_value.empty()) return tag_from_name(flag_value);
    return G.declared_structure;
}

AnalysisReport analyze_problem(const RationalMatrixFunction& G, const std::string& label,
                               std::optional<StructureTag> tag, bool with_oracle,
                               const Tolerances& tol) {
    AnalysisReport rep;
    rep.problem = label;
    rep.tag = tag;
    rep.settings.emplace_back("eig_tol", std::to_string(tol.eig_tol));
    rep.settings.emplace_back("struct_tol", std::to_string(tol.struct_tol));
    rep.settings.emplace_back("pole_tol", std::to_string(tol.pole_tol));

    if (tag && *tag != StructureTag::Unstructured) {
        StructureReport sr = validate_structure(G, *tag, tol.struct_tol);
        if (!sr.ok)
            throw StructureMismatch("input does not satisfy structure '" + tag_name(*tag) + "'");
    }

    for (const Eigentriplet& t : solve_all(G, nullptr, tol.eig_tol)) {
        EigenRecord r;
        r.triplet = t;
        r.assumptions = check_assumptions(G, t);
        bool near_pole = false;
        for (Cplx p : G.pole_candidates())
            near_pole = near_pole || std::abs(t.lambda - p) <= tol.pole_tol * (1.0 + std::abs(t.lambda));
        if (near_pole) continue;
        try {
            r.kappa = kappa_unstructured(G, t);
            if (tag && *tag != StructureTag::Unstructured) {
                r.structured = kappa_structured(G, t, *tag);
                if (with_oracle) {
                    SupOracleResult o = sup_oracle_structured(G, t, *tag);
                    r.oracle = o.value / std::abs(t.derivative_scalar);
                }
            }
        } catch (const NotSimpleError& e) {
            r.warnings.push_back(e.what());
        }
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

const Eigentriplet& pick_eig(const std::vector<Eigentriplet>& eigs, int index) {
    if (index < 0 || index >= static_cast<int>(eigs.size()))
        throw BadParams("--eig index out of range; found " + std::to_string(eigs.size()) +
                        " eigenvalues");
    return eigs[static_cast<size_t>(index)];
}

int run(int argc, const char* const* argv) {
    CLI::App app{"eigenvalue condition numbers of rational matrix functions"};
    app.require_subcommand(1);

    Tolerances tol;
    app.add_option("--eig-tol", tol.eig_tol, "eigensolver residual tolerance");
    app.add_option("--struct-tol", tol.struct_tol, "structure validation tolerance");
    app.add_option("--pole-tol", tol.pole_tol, "pole proximity filter");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "solve and report condition numbers");
    std::string an_file, an_structure;
    bool an_json = false, an_oracle = false;
    analyze->add_option("file", an_file)->required();
    analyze->add_option("--structure", an_structure);
    analyze->add_flag("--json", an_json);
    analyze->add_flag("--oracle", an_oracle);

    // verify
    auto* verify = app.add_subcommand("verify", "compare formulas against the grid oracle");
    std::string ve_file, ve_structure;
    int ve_eig = 0, ve_grid = 4096, ve_samples = 0;
    std::uint64_t ve_seed = 1;
    verify->add_option("file", ve_file)->required();
    verify->add_option("--eig", ve_eig)->required();
    verify->add_option("--structure", ve_structure)->required();
    verify->add_option("--grid", ve_grid);
    verify->add_option("--samples", ve_samples);
    verify->add_option("--seed", ve_seed);

    // perturb
    auto* perturb = app.add_subcommand("perturb", "first-order eigenvalue shift experiment");
    std::string pe_file, pe_structure;
    int pe_eig = 0;
    std::vector<double> pe_eps{1e-3, 1e-4, 1e-5, 1e-6};
    perturb->add_option("file", pe_file)->required();
    perturb->add_option("--eig", pe_eig)->required();
    perturb->add_option("--structured", pe_structure);
    perturb->add_option("--eps", pe_eps)->delimiter(',');

    // example
    auto* example = app.add_subcommand("example", "generate a problem file");
    std::string ex_name, ex_structure, ex_out;
    GenerateParams gp;
    example->add_option("name", ex_name)->required();
    example->add_option("--n", gp.n);
    example->add_option("--m", gp.m);
    example->add_option("--d", gp.d);
    example->add_option("--seed", gp.seed);
    example->add_option("--structure", ex_structure);
    example->add_option("-o,--output", ex_out)->required();

    // check
    auto* check = app.add_subcommand("check", "validate a structure tag");
    std::string ch_file, ch_structure;
    check->add_option("file", ch_file)->required();
    check->add_option("--structure", ch_structure)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*analyze) {
        RationalMatrixFunction G = parse_problem(an_file);
        AnalysisReport rep = analyze_problem(G, an_file, pick_tag(G, an_structure), an_oracle, tol);
        std::cout << render_report(rep, an_json);
        return 0;
    }

    if (*verify) {
        RationalMatrixFunction G = parse_problem(ve_file);
        StructureTag tag = tag_from_name(ve_structure);
        auto eigs = solve_all(G, nullptr, tol.eig_tol);
        const Eigentriplet& t = pick_eig(eigs, ve_eig);
        ConditionReport rep = kappa_structured(G, t, tag);
        double D = std::abs(t.derivative_scalar);
        SupOracleResult grid = sup_oracle_structured(G, t, tag, ve_grid);
        double oracle = grid.value / D;
        std::cout << "lambda: " << t.lambda.real() << " + " << t.lambda.imag() << "i\n";
        std::cout << "kappa: " << rep.kappa << "\n";
        if (rep.exact) {
            std::cout << "formula: " << rep.lo << "\n";
            double rel = std::abs(rep.lo - oracle) / std::max(rep.lo, 1e-300);
            std::cout << "oracle (grid " << ve_grid << "): " << oracle << "\n";
            std::cout << "relative difference: " << rel << "\n";
        } else {
            std::cout << "bounds: [" << rep.lo << ", " << rep.hi << "]\n";
            std::cout << "oracle (grid " << ve_grid << "): " << oracle << "\n";
            bool inside = oracle >= rep.lo - 1e-8 && oracle <= rep.hi + 1e-8;
            std::cout << "oracle inside bounds: " << (inside ? "yes" : "no") << "\n";
        }
        if (ve_samples > 0) {
            SupOracleResult s = sup_oracle_sampling(G, t, tag, ve_samples, ve_seed);
            std::cout << "sampling (" << ve_samples << ", seed " << ve_seed << "): " << s.value
                      << "\n";
        }
        EqualityVerdict eq = equality_predicate(G, t, tag);
        std::cout << "equality: " << (eq.holds() ? "yes" : "no") << " (" << reason_name(eq.reason)
                  << ")\n";
        return 0;
    }

    if (*perturb) {
        RationalMatrixFunction G = parse_problem(pe_file);
        auto eigs = solve_all(G, nullptr, tol.eig_tol);
        const Eigentriplet& t = pick_eig(eigs, pe_eig);
        PerturbationTuple dG;
        if (!pe_structure.empty()) {
            dG = worst_case_perturbation(G, t, tag_from_name(pe_structure), 1.0);
        } else {
            std::mt19937_64 rng(1u);
            dG = random_structured_tuple(G, StructureTag::Unstructured, rng);
        }
        std::sort(pe_eps.begin(), pe_eps.end(), std::greater<double>());
        SlopeReport rep = first_order_experiment(G, t, dG, pe_eps);
        std::cout << "eps | predicted shift | actual shift | remainder\n";
        for (size_t i = 0; i < rep.eps_list.size(); ++i) {
            Cplx p = rep.predicted_shifts[i], a = rep.actual_shifts[i];
            std::cout << rep.eps_list[i] << " | " << p.real() << "+" << p.imag() << "i | "
                      << a.real() << "+" << a.imag() << "i | " << std::abs(a - p) << "\n";
        }
        if (rep.exact_match)
            std::cout << "remainders at rounding level; slope undefined\n";
        else
            std::cout << "remainder slope: " << rep.remainder_slope << "\n";
        return 0;
    }

    if (*example) {
        if (!ex_structure.empty()) gp.structure = tag_from_name(ex_structure);
        RationalMatrixFunction G = generate_example(ex_name, gp);
        write_problem(G, ex_out);
        std::cout << "wrote " << ex_out << "\n";
        return 0;
    }

    if (*check) {
        RationalMatrixFunction G = parse_problem(ch_file);
        StructureTag tag = tag_from_name(ch_structure);
        StructureReport rep = validate_structure(G, tag, tol.struct_tol);
        std::cout << "structure: " << tag_name(tag) << "\n";
        std::cout << "ok: " << (rep.ok ? "yes" : "no") << "\n";
        for (size_t i = 0; i < rep.matrix_residuals.size(); ++i)
            std::cout << "slot " << i << " residual: " << rep.matrix_residuals[i] << "\n";
        for (const auto& [j, cond] : rep.weight_violations)
            std::cout << "weight " << j << " violates: " << cond << "\n";
        if (!rep.ok) throw StructureMismatch("structure validation failed");
        return 0;
    }

    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rmf
