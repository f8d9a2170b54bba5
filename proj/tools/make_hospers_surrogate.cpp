// Regenerates data/hospers: seeded samples whose resultant vectors reproduce
// the printed aggregates of the two Hospers datasets, plus MANIFEST.json.
//
//   make_hospers_surrogate [--output-dir DIR] [--seed N]

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dirstat/analysis/hospers.hpp"
#include "dirstat/analysis/ingest.hpp"
#include "dirstat/analysis/surrogate.hpp"
#include "dirstat/errors.hpp"
#include "dirstat/special_functions.hpp"

namespace {

using namespace dirstat;
using namespace dirstat::analysis;

template <typename Writer>
BundleFile write_file(const std::filesystem::path& dir, const std::string& name, InputFormat format,
                      const std::vector<geometry::UnitVector>& xs, Writer writer) {
    const std::string file = name + ".csv";
    {
        std::ofstream out(dir / file);
        if (!out) throw IoError("cannot write " + (dir / file).string());
        writer(out, xs);
    }
    return {name, file, format, xs.size(), sha256_file((dir / file).string())};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Write the surrogate Hospers data bundle", "make_hospers_surrogate"};
    std::string output_dir = default_bundle_dir();
    std::uint64_t seed = 1953;
    app.add_option("--output-dir", output_dir, "Bundle directory")->capture_default_str();
    app.add_option("--seed", seed, "Seed of the underlying vMF draws")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        const std::filesystem::path dir(output_dir);
        std::filesystem::create_directories(dir);

        const Eigen::VectorXd data1_mean =
            special::mean_resultant_fn(2, hospers::kData1Kappa) * hospers::kPresentField.normalized();
        const Eigen::VectorXd data2_mean =
            special::mean_resultant_fn(2, hospers::kData2Kappa) * hospers::kData2MeanDirection.normalized();
        const auto data1 = resultant_matched_sample({hospers::kData1Size, data1_mean}, seed);
        const auto data2 = resultant_matched_sample({hospers::kData2Size, data2_mean}, seed + 1);

        BundleManifest manifest;
        manifest.provenance = "surrogate";
        manifest.source = "make_hospers_surrogate --seed " + std::to_string(seed) +
                          ": resultant vectors match the printed n, mean direction and kappa_hat";
        manifest.files.push_back(write_file(dir, "data1", InputFormat::CsvDecInc, data1,
                                            [](std::ostream& o, const auto& xs) { write_csv_decinc(o, xs); }));
        manifest.files.push_back(write_file(dir, "data2", InputFormat::CsvXyz, data2,
                                            [](std::ostream& o, const auto& xs) { write_csv_xyz(o, xs); }));
        write_manifest(dir.string(), manifest);
        std::cout << "wrote " << manifest.files.size() << " files and MANIFEST.json to " << dir.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
