#include "shapecell/data/dataset.hpp"

#include <algorithm>
#include <iostream>

#include "shapecell/errors.hpp"
#include "shapecell/imaging/png_io.hpp"

namespace shapecell::data {

namespace fs = std::filesystem;

namespace {

bool is_png(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png";
}

}  // namespace

Dataset scan_dataset(const fs::path& root) {
    if (!fs::is_directory(root)) throw DataError("dataset root is not a directory: " + root.string());

    std::vector<std::string> class_names;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (name == "masks") continue;
        class_names.push_back(name);
    }
    std::sort(class_names.begin(), class_names.end());
    if (class_names.empty())
        throw DataError("no class directories under dataset root: " + root.string());

    Dataset ds;
    ds.class_names = class_names;
    ds.has_masks = true;
    for (std::size_t label = 0; label < class_names.size(); ++label) {
        const fs::path class_dir = root / class_names[label];
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(class_dir))
            if (entry.is_regular_file() && is_png(entry.path())) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty())
            std::cerr << "warning: class directory has no images: " << class_dir.string() << "\n";
        for (const auto& f : files) {
            LabeledSample s;
            s.image_path = f;
            s.label = static_cast<std::int64_t>(label);
            s.class_name = class_names[label];
            const fs::path mask = root / "masks" / class_names[label] / f.filename();
            if (fs::is_regular_file(mask))
                s.mask_path = mask;
            else
                ds.has_masks = false;
            ds.samples.push_back(std::move(s));
        }
    }
    if (ds.samples.empty()) throw DataError("dataset holds no images: " + root.string());
    return ds;
}

LoadedSample load_sample(const LabeledSample& s) {
    LoadedSample out;
    out.image = imaging::read_png(s.image_path.string());
    if (!s.mask_path.empty()) {
        out.mask = imaging::read_mask_png(s.mask_path.string());
        if (out.mask.width() != out.image.width() || out.mask.height() != out.image.height())
            throw DataError("mask size differs from image for " + s.image_path.string());
    }
    out.label = s.label;
    return out;
}

}  // namespace shapecell::data
