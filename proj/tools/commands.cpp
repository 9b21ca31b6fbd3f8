#include "commands.hpp"

#include <iomanip>
#include <ostream>

#include "slicetour/dataio.hpp"
#include "slicetour/error.hpp"
#include "slicetour/render.hpp"
#include "slicetour/session.hpp"
#include "slicetour/shapes.hpp"
#include "slicetour/tour.hpp"

namespace slicetour::cli {

Dataset load_dataset(const std::filesystem::path& path, const PreprocessOptions& pre) {
    CsvOptions csv;
    csv.label_column = pre.label_column;
    Dataset data = read_csv(path, csv);
    data = pre.standardize ? standardize(std::move(data)) : center(std::move(data));
    if (pre.rescale) data = rescale_unit_radius(std::move(data));
    return data;
}

SliceSpec make_slice_spec(const Dataset& data, const SliceOptions& slice) {
    if (slice.eps && slice.h) throw DomainError("--eps and --h are mutually exclusive");
    std::optional<Vector> anchor;
    if (slice.anchor) {
        const auto& a = *slice.anchor;
        if (static_cast<int>(a.size()) != data.p()) {
            throw DimensionMismatch("anchor has " + std::to_string(a.size()) +
                                    " coordinates but the data has p=" + std::to_string(data.p()));
        }
        anchor = data.to_working(Eigen::Map<const Vector>(a.data(), static_cast<Eigen::Index>(a.size())));
    }
    if (slice.h) return SliceSpec::from_h(*slice.h, data.p(), std::move(anchor));
    return SliceSpec::from_eps(slice.eps.value_or(kDefaultEps), data.p(), std::move(anchor));
}

void run_generate(const GenerateOptions& opts, std::ostream& log) {
    const auto kind = parse_shape_kind(opts.kind);
    if (!kind) throw DomainError("unknown shape '" + opts.kind + "'");
    const ShapeSpec spec{*kind, opts.p, opts.n, opts.radius, opts.seed};
    const Dataset data = generate(spec);
    write_csv(opts.out, data);
    log << "wrote " << data.n() << "x" << data.p() << " " << shape_name(*kind) << " to "
        << opts.out.string() << '\n';
}

void run_slice_tour(const SliceTourOptions& opts, std::ostream& log) {
    if (opts.frames == 0) throw DomainError("--frames must be positive");
    const Dataset data = load_dataset(opts.data, opts.pre);
    const SliceSpec spec = make_slice_spec(data, opts.slice);

    RenderStyle style;
    if (opts.style_out == "dot") {
        style.out_glyph = OutGlyph::Dot;
    } else if (opts.style_out == "hidden") {
        style.out_glyph = OutGlyph::Hidden;
    } else {
        throw DomainError("--style-out must be 'dot' or 'hidden'");
    }
    style.half_range = opts.half_range.value_or(max_row_norm(data.values));
    style.width = opts.width;
    style.height = opts.height;
    style.show_axes = opts.axes;
    style.validate();

    const std::vector<int> groups = group_indices(data.labels);
    TourConfig cfg;
    cfg.step_angle = opts.step_angle;
    cfg.seed = opts.seed;
    GrandTour tour(data.p(), cfg);

    AnimationWriter writer(opts.out, animation_format_for(opts.out), style, opts.fps);
    log << "frame_index,t,segment,inside_count\n";
    log << std::setprecision(6);
    for (std::size_t i = 0; i < opts.frames; ++i) {
        const auto tf = tour.next();
        const SliceView view = slice_view(data, tf->basis, spec);
        writer.add(render_frame(view, style, groups, data.column_names));
        log << tf->index << ',' << tf->t << ',' << tf->segment << ',' << view.inside_count() << '\n';
    }
    writer.finish();
}

void run_serve(const ServeOptions& opts, std::ostream& out, std::ostream& err,
               const std::function<void(StreamServer&)>& on_ready) {
    if (opts.frames) err << "warning: --frames is ignored in serve mode\n";
    Dataset data = load_dataset(opts.data, opts.pre);
    const SliceSpec spec = make_slice_spec(data, opts.slice);
    std::optional<Vector> anchor_data;
    if (opts.slice.anchor) {
        anchor_data = Eigen::Map<const Vector>(opts.slice.anchor->data(),
                                               static_cast<Eigen::Index>(opts.slice.anchor->size()));
    }
    TourConfig cfg;
    cfg.step_angle = opts.step_angle;
    cfg.seed = opts.seed;
    auto session = std::make_shared<Session>(std::move(data), cfg, spec, std::move(anchor_data));

    ServerOptions sopts;
    sopts.host = opts.host;
    sopts.port = opts.port;
    sopts.fps = opts.fps;
    sopts.static_dir = opts.static_dir;
    StreamServer server(session, sopts);
    out << "listening on " << server.endpoint() << std::endl;
    if (on_ready) on_ready(server);
    server.run();
}

} // namespace slicetour::cli
