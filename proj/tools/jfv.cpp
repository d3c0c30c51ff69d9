#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jf/registry.hpp"
#include "jf/suite.hpp"

using namespace jf;

namespace {

constexpr int kConfigError = 2;

int emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "jfv: cannot write " << out << "\n";
        return kConfigError;
    }
    f << text;
    return 0;
}

std::string series_json(const std::string& name, int N, const FourierSeries& f) {
    nlohmann::ordered_json j;
    j["schema"] = "jfv.series/1";
    j["name"] = name;
    j["N"] = N;
    j["witt_zero"] = witt(f).is_zero();
    j["modular_support"] = f.modular_support();
    // one term per line keeps golden files diffable
    auto s = nlohmann::ordered_json::parse(to_json(f));
    auto terms = s["terms"];
    s.erase("terms");
    std::string head = s.dump();
    head.pop_back();
    j["series"] = "@";
    std::string out = j.dump(2);
    std::string body = head + (s.empty() ? "" : ",") + "\"terms\": [";
    for (std::size_t i = 0; i < terms.size(); ++i) body += (i ? ",\n    " : "\n    ") + terms[i].dump();
    body += terms.empty() ? "]}" : "\n  ]}";
    out.replace(out.find("\"@\""), 3, body);
    return out + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jfv: exact Fourier-series checks for degree-two Siegel and Jacobi forms"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--trunc", cfg.trunc, "truncation box N")->envname("JFV_TRUNC");
        s->add_option("--ceiling", cfg.ceiling, "largest N used by rank escalation")->envname("JFV_CEILING");
        s->add_option("--out", cfg.out, "write the report here instead of stdout")->envname("JFV_OUT");
        s->add_option("--format", cfg.format, "table or json")->envname("JFV_FORMAT");
    };

    std::string series_name;
    auto* s_series = app.add_subcommand("series", "print a named series");
    s_series->add_option("name", series_name, "series name")->required();
    add_common(s_series);
    cfg.format = "json";

    auto* s_verify = app.add_subcommand("verify", "run verification checks");
    add_common(s_verify);
    s_verify->add_option("--suite", cfg.suite, "comma-separated globs over check names")->envname("JFV_SUITE");
    s_verify->add_option("--group", cfg.group, "restrict to one group (1, 2, 3, 4, 00)")->envname("JFV_GROUP");
    s_verify->add_option("--jobs", cfg.jobs, "worker threads")->envname("JFV_JOBS");
    bool list_only = false;
    s_verify->add_flag("--list", list_only, "list selected checks without running them");

    std::string dims_group, dims_space;
    int dims_k = 10;
    auto* s_dims = app.add_subcommand("dims", "predicted dimensions against computed ranks");
    s_dims->add_option("group", dims_group, "1, 2, 3, 4 or 00")->required();
    s_dims->add_option("space", dims_space, "AI, JI or JII")->required();
    s_dims->add_option("K", dims_k, "largest weight")->required();
    add_common(s_dims);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    if (*s_verify && s_verify->count("--format") == 0 && !std::getenv("JFV_FORMAT")) cfg.format = "table";
    if (*s_dims && s_dims->count("--format") == 0 && !std::getenv("JFV_FORMAT")) cfg.format = "table";

    try {
        validate(cfg);
        if (*s_series) {
            const NamedSeries* ns = find_series(series_name);
            if (!ns) {
                std::cerr << "jfv: unknown series '" << series_name << "'. Did you mean:\n";
                for (const auto& s : suggest_series(series_name)) std::cerr << "  " << s << "\n";
                return kConfigError;
            }
            FourierSeries f = ns->build(cfg.trunc).truncated(cfg.trunc).normalized();
            std::string text = cfg.format == "json" ? series_json(series_name, cfg.trunc, f) : render(f, 1000) + "\n";
            return emit(text, cfg.out);
        }
        if (*s_verify) {
            auto sel = select_checks(cfg);
            if (sel.empty()) {
                std::cerr << "jfv: no checks match '" << cfg.suite << "'\n";
                return kConfigError;
            }
            if (list_only) {
                std::string t;
                for (const auto* c : sel) t += c->name + "\n";
                return emit(t, cfg.out);
            }
            auto rs = run_checks(sel, cfg);
            std::string text = cfg.format == "json" ? report_json(rs, cfg) : report_table(rs);
            if (int e = emit(text, cfg.out)) return e;
            return exit_code(rs);
        }
        if (*s_dims) {
            GroupId g;
            Space sp;
            try {
                g = parse_group(dims_group);
                sp = parse_space(dims_space);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
            if (dims_k < 0 || dims_k > 16) throw ConfigError("K must be in 0..16");
            DimsTable t = dims_table(g, sp, dims_k, cfg);
            if (int e = emit(cfg.format == "json" ? dims_json(t) : dims_text(t), cfg.out)) return e;
            return dims_exit_code(t);
        }
    } catch (const ConfigError& e) {
        std::cerr << "jfv: " << e.what() << "\n";
        return kConfigError;
    }
    return 0;
}
