#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "slicetour/error.hpp"

namespace {

void add_slice_flags(CLI::App& cmd, slicetour::cli::PreprocessOptions& pre,
                     slicetour::cli::SliceOptions& slice) {
    // --h is the half-thickness, so help is long-form only
    cmd.set_help_flag("--help", "Print this help message and exit");
    cmd.add_option("--eps", slice.eps, "Slice volume parameter in (0, 1] (default 0.1)");
    cmd.add_option("--h", slice.h, "Slice half-thickness in working coordinates (excludes --eps)");
    cmd.add_option("--anchor", slice.anchor, "Slice centre in data coordinates, comma separated")
        ->delimiter(',');
    cmd.add_flag("--standardize", pre.standardize, "Divide columns by their standard deviation");
    cmd.add_flag("!--no-rescale", pre.rescale, "Skip rescaling to unit maximum radius");
    cmd.add_option("--label", pre.label_column, "Column holding group labels");
}

} // namespace

int main(int argc, char** argv) {
    namespace cli = slicetour::cli;
    CLI::App app{"slicetour: sliced grand tours of high-dimensional point clouds"};
    app.require_subcommand(1);

    cli::GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Sample a geometric shape into a CSV file");
    generate->add_option("kind", gen.kind,
                         "sphere-hollow, sphere-solid, cube-solid, cube-hollow, torus-flat, roman-surface")
        ->required();
    generate->add_option("--p", gen.p, "Dimension (sphere and cube kinds; default 3)");
    generate->add_option("--n", gen.n, "Number of points")->capture_default_str();
    generate->add_option("--radius", gen.radius, "Radius / half side length")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate->add_option("--out", gen.out, "Output CSV")->required();

    cli::SliceTourOptions tour;
    auto* slice_tour = app.add_subcommand("slice-tour", "Render a slice tour animation");
    slice_tour->add_option("data", tour.data, "Input CSV")->required();
    add_slice_flags(*slice_tour, tour.pre, tour.slice);
    slice_tour->add_option("--frames", tour.frames, "Number of frames")->capture_default_str();
    slice_tour->add_option("--step-angle", tour.step_angle, "Radians per frame")->capture_default_str();
    slice_tour->add_option("--seed", tour.seed, "Tour seed")->capture_default_str();
    slice_tour->add_option("--fps", tour.fps, "Frames per second")->capture_default_str();
    slice_tour->add_option("--style-out", tour.style_out, "Out-of-slice glyph: dot or hidden")
        ->capture_default_str();
    slice_tour->add_option("--half-range", tour.half_range,
                           "Axis half-range in working units (default: data radius)");
    slice_tour->add_option("--width", tour.width)->capture_default_str();
    slice_tour->add_option("--height", tour.height)->capture_default_str();
    slice_tour->add_flag("!--no-axes", tour.axes, "Do not draw the variable axes");
    slice_tour->add_option("--out", tour.out, "Output .gif, or a directory for PNG frames")
        ->capture_default_str();

    cli::ServeOptions serve;
    auto* serve_cmd = app.add_subcommand("serve", "Stream a live slice tour over a websocket");
    serve_cmd->add_option("data", serve.data, "Input CSV")->required();
    add_slice_flags(*serve_cmd, serve.pre, serve.slice);
    serve_cmd->add_option("--port", serve.port, "TCP port")->capture_default_str();
    serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--step-angle", serve.step_angle, "Radians per frame")->capture_default_str();
    serve_cmd->add_option("--seed", serve.seed, "Tour seed")->capture_default_str();
    serve_cmd->add_option("--fps", serve.fps, "Frames per second")->capture_default_str();
    serve_cmd->add_option("--static-dir", serve.static_dir, "Directory with viewer assets");
    serve_cmd->add_option("--frames", serve.frames, "Ignored in serve mode");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            cli::run_generate(gen, std::cerr);
        } else if (*slice_tour) {
            cli::run_slice_tour(tour, std::cout);
        } else if (*serve_cmd) {
            cli::run_serve(serve, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
