#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slicetour/linalg.hpp"
#include "slicetour/server.hpp"
#include "slicetour/slicer.hpp"

namespace slicetour::cli {

struct GenerateOptions {
    std::string kind;
    std::optional<int> p;
    int n = 1000;
    double radius = 1.0;
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct PreprocessOptions {
    bool standardize = false;
    bool rescale = true;
    std::optional<std::string> label_column;
};

struct SliceOptions {
    std::optional<double> eps;
    std::optional<double> h;
    std::optional<std::vector<double>> anchor;  // data coordinates
};

struct SliceTourOptions {
    std::filesystem::path data;
    PreprocessOptions pre;
    SliceOptions slice;
    std::size_t frames = 200;
    double step_angle = 0.05;
    std::uint64_t seed = 1;
    double fps = 25.0;
    std::string style_out = "dot";
    std::optional<double> half_range;
    int width = 400;
    int height = 400;
    bool axes = true;
    std::filesystem::path out = "slice_tour.gif";
};

struct ServeOptions {
    std::filesystem::path data;
    PreprocessOptions pre;
    SliceOptions slice;
    double step_angle = 0.05;
    std::uint64_t seed = 1;
    double fps = 25.0;
    std::string host = "127.0.0.1";
    unsigned short port = ServerOptions::kDefaultPort;
    std::filesystem::path static_dir;
    std::optional<std::size_t> frames;  // accepted for symmetry with slice-tour, ignored
};

// Loaded, centered (and optionally standardized / unit-radius) dataset.
Dataset load_dataset(const std::filesystem::path& path, const PreprocessOptions& pre);

// Resolves eps / h / anchor against a preprocessed dataset. eps and h are
// mutually exclusive; with neither, eps defaults to 0.1. The anchor is
// mapped from data coordinates into working coordinates.
SliceSpec make_slice_spec(const Dataset& data, const SliceOptions& slice);

void run_generate(const GenerateOptions& opts, std::ostream& log);

// Writes the animation and prints the per-frame CSV log
// frame_index,t,segment,inside_count to `log`.
void run_slice_tour(const SliceTourOptions& opts, std::ostream& log);

// Blocks until the server stops. `on_ready` runs once the socket is bound,
// before serving starts (tests use it to learn the port and stop the server).
void run_serve(const ServeOptions& opts, std::ostream& out, std::ostream& err,
               const std::function<void(StreamServer&)>& on_ready = {});

} // namespace slicetour::cli
