// mamseg: breast density segmentation for digitized mammograms.
//
// Subcommands:
//   kernels  dump a Gabor filter bank as 8-bit PGMs
//   enhance  CLAHE contrast enhancement of a single image
//   segment  segment one mammogram/mask pair
//   batch    process a directory of mammogram/mask pairs
//   report   recompute the density CSV from existing dense/breast masks
//
// Exit codes: 0 success, 1 usage, 2 I/O failure, 3 bad data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mamseg/imageio.hpp"
#include "mamseg/pipeline.hpp"
#include "mamseg/preprocess.hpp"

namespace fs = std::filesystem;
using namespace mamseg;

namespace {

struct CliOptions {
    PipelineConfig pipeline;
    std::string config_path;
    std::string tiles = "8x8";
    std::string reference = "max";
    std::string superposition = "max";
    std::string category_edges = "0.25,0.5,0.75";
};

// Plain key = value configuration file; '#' comments; unknown keys are errors.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw data_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw data_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        if (!kv.emplace(key, value).second)
            throw data_error(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return kv;
}

void parse_tiles(const std::string& spec, ClaheConfig& cfg) {
    const auto x = spec.find('x');
    if (x == std::string::npos)
        throw data_error("tiles: expected NxM, got '" + spec + "'");
    try {
        cfg.tiles_x = std::stoi(spec.substr(0, x));
        cfg.tiles_y = std::stoi(spec.substr(x + 1));
    } catch (const std::exception&) {
        throw data_error("tiles: expected NxM, got '" + spec + "'");
    }
}

void parse_reference(const std::string& name, Reference& ref) {
    if (name == "max")
        ref = Reference::Max;
    else if (name == "mean")
        ref = Reference::Mean;
    else
        throw data_error("reference: expected max or mean, got '" + name + "'");
}

void parse_superposition(const std::string& name, Superposition& mode) {
    if (name == "max")
        mode = Superposition::Max;
    else if (name == "sum")
        mode = Superposition::Sum;
    else
        throw data_error("superposition: expected max or sum, got '" + name + "'");
}

void parse_edges(const std::string& spec, std::array<double, 3>& edges) {
    std::array<double, 3> out{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const auto comma = i < 2 ? spec.find(',', pos) : spec.size();
        if (comma == std::string::npos)
            throw data_error("category-edges: expected three comma-separated fractions");
        try {
            out[i] = std::stod(spec.substr(pos, comma - pos));
        } catch (const std::exception&) {
            throw data_error("category-edges: expected three comma-separated fractions");
        }
        pos = comma + 1;
    }
    if (!(out[0] < out[1] && out[1] < out[2]) || out[0] <= 0.0 || out[2] >= 1.0)
        throw data_error("category-edges: edges must be increasing inside (0,1)");
    edges = out;
}

// Options shared by the pipeline-driving subcommands. Returns the option
// pointers keyed by config-file name so file values can back-fill flags the
// command line left unset.
std::map<std::string, CLI::Option*> add_pipeline_options(CLI::App* cmd, CliOptions& o) {
    std::map<std::string, CLI::Option*> opts;
    opts["config"] = cmd->add_option("--config", o.config_path, "key = value configuration file");
    opts["out"] = cmd->add_option("--out", o.pipeline.out_dir, "output directory");
    opts["debug-stages"] =
        cmd->add_flag("--debug-stages", o.pipeline.debug_stages, "write per-stage PGM dumps");
    opts["orientations"] =
        cmd->add_option("--orientations", o.pipeline.orientations, "filter bank orientations")
            ->check(CLI::PositiveNumber);
    opts["kernel-size"] =
        cmd->add_option("--kernel-size", o.pipeline.kernel_size, "odd kernel side, 0 = auto");
    opts["gamma"] = cmd->add_option("--gamma", o.pipeline.gamma, "Gabor aspect ratio");
    opts["lambda"] = cmd->add_option("--lambda", o.pipeline.lambda, "wavelength px, 0 = auto");
    opts["sigma"] = cmd->add_option("--sigma", o.pipeline.sigma, "envelope sigma px, 0 = auto");
    opts["psi"] = cmd->add_option("--psi", o.pipeline.psi, "phase offset, radians");
    opts["superposition"] =
        cmd->add_option("--superposition", o.superposition, "response fusion: max|sum");
    opts["tiles"] = cmd->add_option("--tiles", o.tiles, "CLAHE tile grid NxM");
    opts["clip-limit"] =
        cmd->add_option("--clip-limit", o.pipeline.clahe.clip_limit, "CLAHE clip limit");
    opts["bins"] = cmd->add_option("--bins", o.pipeline.clahe.bins, "CLAHE histogram bins");
    opts["t-low"] = cmd->add_option("--t-low", o.pipeline.segment.t_low, "low threshold fraction");
    opts["t-high"] =
        cmd->add_option("--t-high", o.pipeline.segment.t_high, "high threshold fraction");
    opts["reference"] =
        cmd->add_option("--reference", o.reference, "threshold reference: max|mean");
    opts["gain"] = cmd->add_option("--gain", o.pipeline.segment.gain, "vessel suppression gain");
    opts["morph-radius"] =
        cmd->add_option("--morph-radius", o.pipeline.segment.morph_radius, "disk radius, px");
    opts["jobs"] = cmd->add_option("--jobs", o.pipeline.jobs, "worker threads for batch")
                       ->check(CLI::PositiveNumber);
    opts["category-edges"] =
        cmd->add_option("--category-edges", o.category_edges, "density category edges a,b,c");
    return opts;
}

// Config-file values apply only where the command line did not set the flag.
void apply_config_file(const std::map<std::string, CLI::Option*>& opts, CliOptions& o) {
    if (o.config_path.empty()) return;
    for (const auto& [key, value] : parse_config_file(o.config_path)) {
        auto it = opts.find(key);
        if (it == opts.end() || key == "config")
            throw data_error(o.config_path + ": unknown key '" + key + "'");
        if (it->second->count() > 0) continue;  // CLI flag wins
        if (key == "debug-stages") {
            if (value == "true" || value == "1")
                o.pipeline.debug_stages = true;
            else if (value == "false" || value == "0")
                o.pipeline.debug_stages = false;
            else
                throw data_error("debug-stages: expected true/false");
        } else {
            it->second->clear();
            try {
                it->second->add_result(value);
                it->second->run_callback();
            } catch (const CLI::Error&) {
                throw data_error(o.config_path + ": bad value for '" + key + "': " + value);
            }
        }
    }
}

void finalize(CliOptions& o) {
    parse_tiles(o.tiles, o.pipeline.clahe);
    parse_reference(o.reference, o.pipeline.segment.reference);
    parse_superposition(o.superposition, o.pipeline.superposition);
    parse_edges(o.category_edges, o.pipeline.category_edges);
}

int cmd_kernels(const CliOptions& o) {
    const int size = o.pipeline.kernel_size;
    if (size < 3 || size % 2 == 0)
        throw data_error("kernels: --kernel-size must be odd and >= 3");
    const FilterBank bank = make_bank(resolve_gabor_params(o.pipeline, size),
                                      o.pipeline.orientations, size);
    fs::create_directories(o.pipeline.out_dir);
    for (std::size_t k = 0; k < bank.kernels.size(); ++k) {
        FloatRaster real, imag;
        real.width = real.height = imag.width = imag.height = bank.kernels[k].size;
        real.values = bank.kernels[k].real;
        imag.values = bank.kernels[k].imag;
        char name[48];
        std::snprintf(name, sizeof name, "kernel_%02zu_real.pgm", k);
        save_pgm(o.pipeline.out_dir / name, rescale_to_depth(real, 8));
        std::snprintf(name, sizeof name, "kernel_%02zu_imag.pgm", k);
        save_pgm(o.pipeline.out_dir / name, rescale_to_depth(imag, 8));
        std::printf("%s theta=%.4f rad\n", name, bank.thetas[k]);
    }
    return 0;
}

int cmd_enhance(const CliOptions& o, const std::string& image_path,
                const std::string& mask_path) {
    const GrayImage image = load_pgm(image_path);
    GrayImage enhanced;
    if (mask_path.empty()) {
        enhanced = clahe(image, o.pipeline.clahe);
    } else {
        enhanced = clahe(image, o.pipeline.clahe, load_mask(mask_path));
    }
    fs::create_directories(o.pipeline.out_dir);
    const fs::path out =
        o.pipeline.out_dir / (fs::path(image_path).stem().string() + "_clahe.pgm");
    save_pgm(out, enhanced);
    std::printf("%s\n", out.string().c_str());
    return 0;
}

int cmd_segment(const CliOptions& o, const std::string& image_path,
                const std::string& mask_path) {
    const DensityReport report = run_single(image_path, mask_path, o.pipeline);
    std::printf("%s\n%s\n", csv_header().c_str(), csv_row(report).c_str());
    return 0;
}

int cmd_batch(const CliOptions& o, const std::string& image_dir, const std::string& mask_dir,
              std::string csv_path) {
    const auto rows = run_batch(image_dir, mask_dir, o.pipeline, std::cerr);
    if (csv_path.empty()) csv_path = (o.pipeline.out_dir / "report.csv").string();
    fs::create_directories(fs::path(csv_path).parent_path());
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot create file: " + csv_path);
    out << report_csv(rows);
    if (!out)
        throw io_error("write failure: " + csv_path);
    std::fprintf(stderr, "%zu images -> %s\n", rows.size(), csv_path.c_str());
    return 0;
}

int cmd_report(const CliOptions& o, const std::string& dense_dir,
               const std::string& breast_dir) {
    if (!fs::is_directory(dense_dir)) throw io_error("not a directory: " + dense_dir);
    if (!fs::is_directory(breast_dir)) throw io_error("not a directory: " + breast_dir);

    auto strip_dense = [](std::string stem) {
        const std::string suffix = "_dense";
        if (stem.size() > suffix.size() &&
            stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
            stem.erase(stem.size() - suffix.size());
        return stem;
    };
    std::map<std::string, fs::path> dense, breast;
    for (const auto& e : fs::directory_iterator(dense_dir))
        if (e.is_regular_file() && e.path().extension() == ".pgm")
            dense.emplace(strip_dense(e.path().stem().string()), e.path());
    for (const auto& e : fs::directory_iterator(breast_dir)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".pgm" || ext == ".pbm"))
            breast.emplace(e.path().stem().string(), e.path());
    }

    std::vector<DensityReport> rows;
    for (const auto& [stem, dense_path] : dense) {
        auto it = breast.find(stem);
        if (it == breast.end()) {
            std::cerr << "warning: no breast mask for '" << stem << "', skipped\n";
            continue;
        }
        const BinaryMask d = load_mask(dense_path);
        const BinaryMask b = load_mask(it->second);
        DensityReport r;
        r.image_id = stem;
        r.breast_px = b.count();
        r.dense_px = d.count();
        r.percent_dense = density_percent(d, b);
        r.category = categorize(r.percent_dense, o.pipeline.category_edges);
        r.threshold_reference = o.pipeline.segment.reference;
        rows.push_back(std::move(r));
    }
    if (rows.empty())
        throw data_error("no dense/breast mask pairs found");
    std::fputs(report_csv(rows).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dense/fat tissue segmentation for digitized mammograms"};
    app.require_subcommand(1);

    CliOptions o;
    std::string image_path, mask_path, image_dir, mask_dir, dense_dir, breast_dir, csv_path;

    CLI::App* kernels = app.add_subcommand("kernels", "dump the Gabor bank as PGMs");
    auto kernel_opts = add_pipeline_options(kernels, o);

    CLI::App* enhance = app.add_subcommand("enhance", "CLAHE enhancement of one image");
    enhance->add_option("--image", image_path, "input PGM")->required();
    enhance->add_option("--mask", mask_path, "optional region mask");
    auto enhance_opts = add_pipeline_options(enhance, o);

    CLI::App* segment = app.add_subcommand("segment", "segment one mammogram/mask pair");
    segment->add_option("--image", image_path, "input PGM")->required();
    segment->add_option("--mask", mask_path, "breast mask (PGM/PBM)")->required();
    auto segment_opts = add_pipeline_options(segment, o);

    CLI::App* batch = app.add_subcommand("batch", "process directories of pairs");
    batch->add_option("--images", image_dir, "mammogram directory")->required();
    batch->add_option("--masks", mask_dir, "mask directory")->required();
    batch->add_option("--csv", csv_path, "report path (default <out>/report.csv)");
    auto batch_opts = add_pipeline_options(batch, o);

    CLI::App* report = app.add_subcommand("report", "recompute CSV from existing masks");
    report->add_option("--dense", dense_dir, "dense mask directory")->required();
    report->add_option("--breast", breast_dir, "breast mask directory")->required();
    auto report_opts = add_pipeline_options(report, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (kernels->parsed()) {
            apply_config_file(kernel_opts, o);
            finalize(o);
            return cmd_kernels(o);
        }
        if (enhance->parsed()) {
            apply_config_file(enhance_opts, o);
            finalize(o);
            return cmd_enhance(o, image_path, mask_path);
        }
        if (segment->parsed()) {
            apply_config_file(segment_opts, o);
            finalize(o);
            return cmd_segment(o, image_path, mask_path);
        }
        if (batch->parsed()) {
            apply_config_file(batch_opts, o);
            finalize(o);
            return cmd_batch(o, image_dir, mask_dir, csv_path);
        }
        if (report->parsed()) {
            apply_config_file(report_opts, o);
            finalize(o);
            return cmd_report(o, dense_dir, breast_dir);
        }
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const data_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 1;
}
