#include "mamseg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "mamseg/imageio.hpp"
#include "mamseg/preprocess.hpp"

namespace mamseg {

namespace fs = std::filesystem;

GaborParams resolve_gabor_params(const PipelineConfig& config, int kernel_size) {
    GaborParams p = default_params_for(kernel_size);
    p.gamma = config.gamma;
    if (config.lambda > 0.0) p.lambda = config.lambda;
    p.sigma = config.sigma > 0.0 ? config.sigma : 0.56 * p.lambda;
    p.psi = config.psi;
    return p;
}

namespace {

int clamp_kernel_to(int kernel, int limit) {
    int k = std::min(kernel, limit);
    if (k % 2 == 0) --k;
    return std::max(k, 3);
}

BinaryMask paste_back(const BinaryMask& roi_mask, const RoiBox& box, int width, int height,
                      bool flipped) {
    BinaryMask full(width, height);
    for (int r = 0; r < roi_mask.height; ++r)
        for (int c = 0; c < roi_mask.width; ++c)
            if (roi_mask.at(r, c)) {
                const int fc = box.col0 + c;
                full.set(box.row0 + r, flipped ? width - 1 - fc : fc, true);
            }
    return full;
}

void dump_stages(const fs::path& dir, const std::string& stem, const GrayImage& roi,
                 const BinaryMask& region, const SegmentStages& s, const FilterBank& bank) {
    auto name = [&](const std::string& tag) { return dir / (stem + "_" + tag + ".pgm"); };
    save_pgm(name("roi"), roi);
    save_mask(name("region"), region);
    save_pgm(name("enhanced"), s.enhanced);
    save_pgm(name("response"), rescale_to_depth(s.response, 8));
    save_pgm(name("suppressed"), s.suppressed);
    save_mask(name("mask_low"), s.low);
    save_mask(name("mask_high"), s.high);
    save_mask(name("mask_and"), s.fused);
    for (std::size_t k = 0; k < bank.kernels.size(); ++k) {
        FloatRaster kernel;
        kernel.width = kernel.height = bank.kernels[k].size;
        kernel.values = bank.kernels[k].real;
        FloatRaster resp = convolve2d(s.enhanced, kernel);
        char tag[32];
        std::snprintf(tag, sizeof tag, "orient_%02zu", k);
        save_pgm(name(tag), rescale_to_depth(resp, 8));
    }
}

struct Pair {
    std::string stem;
    fs::path image;
    fs::path mask;
};

}  // namespace

DensityReport run_single(const fs::path& image_path, const fs::path& mask_path,
                         const PipelineConfig& config) {
    const GrayImage input = load_pgm(image_path);
    const BinaryMask breast = load_mask(mask_path);
    require_same_dims(input.width, input.height, breast.width, breast.height,
                      (image_path.string() + " vs " + mask_path.string()).c_str());

    const GrayImage masked = apply_mask(input, breast);
    const OrientResult oriented = orient_left(masked, breast);
    const BreastExtent extent = breast_extent(oriented.mask);
    const RoiBox box = roi_box(extent, input.width, input.height);
    const GrayImage roi = crop(oriented.image, box);
    const BinaryMask region = crop(oriented.mask, box);

    // Kernel size follows the original mammogram dimensions, then shrinks if
    // the ROI cannot hold it.
    int kernel = config.kernel_size > 0 ? config.kernel_size
                                        : kernel_size_for(input.width, input.height);
    kernel = clamp_kernel_to(kernel, std::min(roi.width, roi.height));
    if (kernel > std::min(roi.width, roi.height))
        throw data_error(image_path.string() + ": ROI too small for any kernel");

    const FilterBank bank =
        make_bank(resolve_gabor_params(config, kernel), config.orientations, kernel);
    const SegmentStages stages = segment_dense_stages(roi, region, bank, config.clahe,
                                                      config.segment, config.superposition);

    const std::string stem = image_path.stem().string();
    const BinaryMask dense_full =
        paste_back(stages.dense, box, input.width, input.height, oriented.flipped);

    fs::create_directories(config.out_dir);
    save_mask(config.out_dir / (stem + "_dense.pgm"), dense_full);
    if (config.debug_stages) {
        dump_stages(config.out_dir, stem, roi, region, stages, bank);
        save_mask(config.out_dir / (stem + "_dense.roi.pgm"), stages.dense);
    }

    DensityReport report;
    report.image_id = stem;
    report.breast_px = breast.count();
    report.dense_px = stages.dense.count();
    report.percent_dense = density_percent(dense_full, breast);
    report.category = categorize(report.percent_dense, config.category_edges);
    report.threshold_reference = config.segment.reference;
    return report;
}

std::vector<DensityReport> run_batch(const fs::path& image_dir, const fs::path& mask_dir,
                                     const PipelineConfig& config, std::ostream& warnings) {
    if (!fs::is_directory(image_dir))
        throw io_error("not a directory: " + image_dir.string());
    if (!fs::is_directory(mask_dir))
        throw io_error("not a directory: " + mask_dir.string());

    auto collect = [](const fs::path& dir) {
        std::map<std::string, fs::path> stems;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string ext = entry.path().extension().string();
            if (ext == ".pgm" || ext == ".pbm")
                stems.emplace(entry.path().stem().string(), entry.path());
        }
        return stems;
    };
    const auto images = collect(image_dir);
    const auto masks = collect(mask_dir);

    std::vector<Pair> pairs;
    for (const auto& [stem, path] : images) {
        auto it = masks.find(stem);
        if (it == masks.end())
            warnings << "warning: no mask for image '" << stem << "', skipped\n";
        else
            pairs.push_back({stem, path, it->second});
    }
    for (const auto& [stem, path] : masks)
        if (!images.count(stem))
            warnings << "warning: no image for mask '" << stem << "', skipped\n";
    if (pairs.empty())
        throw data_error("no image/mask pairs found");

    // Workers pull pairs by atomic index; rows land in slot order, so the
    // report is identical for any thread count.
    std::vector<DensityReport> rows(pairs.size());
    std::vector<std::string> errors(pairs.size());
    std::atomic<std::size_t> next{0};
    const int jobs = std::max(1, config.jobs);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            try {
                rows[i] = run_single(pairs[i].image, pairs[i].mask, config);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (!errors[i].empty())
            throw data_error(pairs[i].stem + ": " + errors[i]);

    // pairs came from a std::map, so rows are already sorted by image_id
    return rows;
}

std::string report_csv(const std::vector<DensityReport>& rows) {
    std::string out = csv_header() + "\n";
    for (const DensityReport& r : rows) out += csv_row(r) + "\n";
    return out;
}

}  // namespace mamseg
