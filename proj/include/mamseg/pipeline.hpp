#ifndef MAMSEG_PIPELINE_HPP
#define MAMSEG_PIPELINE_HPP

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mamseg/clahe.hpp"
#include "mamseg/gabor.hpp"
#include "mamseg/metrics.hpp"
#include "mamseg/segment.hpp"

namespace mamseg {

/// Every tunable of the batch pipeline. A default-constructed config is a
/// valid run.
struct PipelineConfig {
    int orientations = 8;
    int kernel_size = 0;   // 0 = derive from image dimensions (1/10 rule)
    double gamma = 0.5;
    double lambda = 0.0;   // 0 = kernel_size / 4
    double sigma = 0.0;    // 0 = 0.56 * lambda
    double psi = 0.0;
    Superposition superposition = Superposition::Max;
    ClaheConfig clahe;
    SegmentConfig segment;
    std::array<double, 3> category_edges = kDefaultCategoryEdges;
    bool debug_stages = false;
    std::filesystem::path out_dir = ".";
    int jobs = 1;
};

/// Gabor parameters resolved against a concrete kernel size (auto fields
/// filled from the defaults rule).
GaborParams resolve_gabor_params(const PipelineConfig& config, int kernel_size);

/// Segment one mammogram/mask pair: mask, orient, ROI crop, dense-tissue
/// decision. Writes `<stem>_dense.pgm` (input coordinates) into out_dir,
/// plus per-stage dumps when debug_stages is set. Returns the density report.
DensityReport run_single(const std::filesystem::path& image_path,
                         const std::filesystem::path& mask_path,
                         const PipelineConfig& config);

/// Pair images and masks by file stem and run each pair. Unpaired files are
/// reported on `warnings` (sorted by stem) and skipped. Rows come back sorted
/// by image_id regardless of the number of worker threads.
std::vector<DensityReport> run_batch(const std::filesystem::path& image_dir,
                                     const std::filesystem::path& mask_dir,
                                     const PipelineConfig& config, std::ostream& warnings);

std::string report_csv(const std::vector<DensityReport>& rows);

}  // namespace mamseg

#endif
