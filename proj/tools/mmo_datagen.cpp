// Writes the synthetic stand-in dataset files in the on-disk layouts the svm
// loaders expect (BCW: 699 rows including 16 missing-value rows; IS: header
// lines plus 2310 class-name rows).

#include <cstdint>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "mmo/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Synthetic dataset generator"};
    std::string out = "data";
    std::uint64_t bcw_seed = 555;
    std::uint64_t is_seed = 777;
    app.add_option("--out", out, "Output directory");
    app.add_option("--bcw-seed", bcw_seed, "Seed for the BCW stand-in");
    app.add_option("--is-seed", is_seed, "Seed for the image-segmentation stand-in");
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out);
        std::filesystem::path bcw = std::filesystem::path(out) / "breast-cancer-wisconsin.data";
        std::filesystem::path is = std::filesystem::path(out) / "segmentation.data";
        mmo::synthetic::write_bcw_raw(bcw.string(), bcw_seed);
        mmo::synthetic::write_is_raw(is.string(), is_seed);
        std::cout << bcw.string() << "\n" << is.string() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
