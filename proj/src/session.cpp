#include "slicetour/session.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "json.hpp"

namespace slicetour {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ControlMessage::Kind, std::string_view>, 9> kKinds{{
    {ControlMessage::Kind::SetEps, "set_eps"},
    {ControlMessage::Kind::SetH, "set_h"},
    {ControlMessage::Kind::SetAnchor, "set_anchor"},
    {ControlMessage::Kind::ClearAnchor, "clear_anchor"},
    {ControlMessage::Kind::Pause, "pause"},
    {ControlMessage::Kind::Resume, "resume"},
    {ControlMessage::Kind::StepOnce, "step_once"},
    {ControlMessage::Kind::SetSpeed, "set_speed"},
    {ControlMessage::Kind::Reseed, "reseed"},
}};

double finite_number(const json& obj, const char* field) {
    if (!obj.contains(field)) throw ProtocolError(field, std::string("missing field '") + field + "'");
    const json& v = obj.at(field);
    if (!v.is_number()) throw ProtocolError(field, std::string("field '") + field + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ProtocolError(field, std::string("field '") + field + "' must be finite");
    return x;
}

json vector_json(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json row_major(const Matrix& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
    }
    return arr;
}

Vector number_array(const json& v, const char* field) {
    if (!v.is_array()) throw ProtocolError(field, std::string("field '") + field + "' must be an array");
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw ProtocolError(field, std::string("field '") + field + "' must contain only numbers");
        }
        out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    }
    if (!out.allFinite()) throw ProtocolError(field, std::string("field '") + field + "' must be finite");
    return out;
}

Matrix from_row_major(const json& v, const char* field, Eigen::Index rows, Eigen::Index cols) {
    const Vector flat = number_array(v, field);
    if (flat.size() != rows * cols) {
        throw ProtocolError(field, std::string("field '") + field + "' has the wrong length");
    }
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = flat(i * cols + j);
    }
    return m;
}

json require(const json& obj, const char* field) {
    if (!obj.contains(field)) throw ProtocolError(field, std::string("missing field '") + field + "'");
    return obj.at(field);
}

} // namespace

std::string_view control_kind_name(ControlMessage::Kind kind) {
    for (const auto& [k, name] : kKinds) {
        if (k == kind) return name;
    }
    return "unknown";
}

ControlMessage parse_control(std::string_view text, int p) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProtocolError("message", std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ProtocolError("message", "control message must be a JSON object");
    if (!obj.contains("kind") || !obj["kind"].is_string()) {
        throw ProtocolError("kind", "missing or non-string field 'kind'");
    }
    const auto name = obj["kind"].get<std::string>();
    ControlMessage msg;
    bool known = false;
    for (const auto& [k, n] : kKinds) {
        if (n == name) {
            msg.kind = k;
            known = true;
        }
    }
    if (!known) throw ProtocolError("kind", "unknown control kind '" + name + "'");

    using Kind = ControlMessage::Kind;
    switch (msg.kind) {
    case Kind::SetEps:
        msg.scalar = finite_number(obj, "value");
        if (!(msg.scalar > 0.0 && msg.scalar <= 1.0)) throw ProtocolError("value", "eps must lie in (0, 1]");
        break;
    case Kind::SetH:
        msg.scalar = finite_number(obj, "value");
        if (!(msg.scalar > 0.0)) throw ProtocolError("value", "h must be positive");
        break;
    case Kind::SetSpeed:
        msg.scalar = finite_number(obj, "value");
        if (!(msg.scalar > 0.0)) throw ProtocolError("value", "speed must be positive");
        break;
    case Kind::SetAnchor:
        msg.vector = number_array(require(obj, "value"), "value");
        if (msg.vector.size() != p) {
            throw ProtocolError("value", "anchor has " + std::to_string(msg.vector.size()) +
                                             " coordinates, expected " + std::to_string(p));
        }
        break;
    case Kind::Reseed: {
        const json v = require(obj, "value");
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
            throw ProtocolError("value", "seed must be a non-negative integer");
        }
        msg.seed = v.get<std::uint64_t>();
        break;
    }
    case Kind::ClearAnchor:
    case Kind::Pause:
    case Kind::Resume:
    case Kind::StepOnce: break;
    }
    return msg;
}

std::string serialize(const ControlMessage& msg) {
    json obj{{"kind", control_kind_name(msg.kind)}};
    using Kind = ControlMessage::Kind;
    switch (msg.kind) {
    case Kind::SetEps:
    case Kind::SetH:
    case Kind::SetSpeed: obj["value"] = msg.scalar; break;
    case Kind::SetAnchor: obj["value"] = vector_json(msg.vector); break;
    case Kind::Reseed: obj["value"] = msg.seed; break;
    default: break;
    }
    return obj.dump();
}

std::string serialize(const FrameMessage& msg) {
    json inside = json::array();
    std::size_t count = 0;
    for (bool b : msg.inside) {
        inside.push_back(b);
        count += b ? 1 : 0;
    }
    json obj{
        {"type", "frame"},
        {"frame_index", msg.frame_index},
        {"t", msg.t},
        {"segment", msg.segment},
        {"p", msg.basis.rows()},
        {"n", msg.points.rows()},
        {"basis", row_major(msg.basis)},
        {"points", row_major(msg.points)},
        {"inside", std::move(inside)},
        {"inside_count", count},
        {"distances", vector_json(msg.distances)},
        {"h", msg.h},
        {"eps", msg.eps},
        {"anchor", msg.anchor ? vector_json(*msg.anchor) : json(nullptr)},
        {"column_names", msg.column_names},
    };
    return obj.dump();
}

FrameMessage parse_frame_message(std::string_view text) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProtocolError("message", std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object() || obj.value("type", "") != "frame") {
        throw ProtocolError("type", "not a frame message");
    }
    try {
        FrameMessage msg;
        msg.frame_index = require(obj, "frame_index").get<std::size_t>();
        msg.t = finite_number(obj, "t");
        msg.segment = require(obj, "segment").get<std::size_t>();
        const auto p = require(obj, "p").get<Eigen::Index>();
        const auto n = require(obj, "n").get<Eigen::Index>();
        msg.basis = from_row_major(require(obj, "basis"), "basis", p, 2);
        msg.points = from_row_major(require(obj, "points"), "points", n, 2);
        const json inside = require(obj, "inside");
        if (!inside.is_array() || static_cast<Eigen::Index>(inside.size()) != n) {
            throw ProtocolError("inside", "field 'inside' must be an array of n booleans");
        }
        for (const auto& b : inside) {
            if (!b.is_boolean()) throw ProtocolError("inside", "field 'inside' must contain booleans");
            msg.inside.push_back(b.get<bool>());
        }
        msg.distances = number_array(require(obj, "distances"), "distances");
        if (msg.distances.size() != n) throw ProtocolError("distances", "field 'distances' has the wrong length");
        msg.h = finite_number(obj, "h");
        msg.eps = finite_number(obj, "eps");
        const json anchor = require(obj, "anchor");
        if (!anchor.is_null()) {
            msg.anchor = number_array(anchor, "anchor");
            if (msg.anchor->size() != p) throw ProtocolError("anchor", "field 'anchor' has the wrong length");
        }
        msg.column_names = require(obj, "column_names").get<std::vector<std::string>>();
        if (static_cast<Eigen::Index>(msg.column_names.size()) != p) {
            throw ProtocolError("column_names", "field 'column_names' has the wrong length");
        }
        return msg;
    } catch (const json::exception& e) {
        throw ProtocolError("message", std::string("malformed frame: ") + e.what());
    }
}

std::string error_reply(const ProtocolError& e) {
    return json{{"type", "error"}, {"field", e.field()}, {"message", e.what()}}.dump();
}

Session::Session(Dataset data, TourConfig cfg, SliceSpec spec, std::optional<Vector> anchor_data)
    : data_(std::move(data)), cfg_(cfg), spec_(std::move(spec)), anchor_data_(std::move(anchor_data)),
      tour_(std::make_unique<GrandTour>(data_.p(), cfg_)) {
    if (spec_.p() != data_.p()) throw DimensionMismatch("slice spec and data disagree on p");
    if (spec_.anchor() && !anchor_data_) anchor_data_ = *spec_.anchor();
}

std::optional<std::string> Session::submit(std::string_view text, ClientId from) {
    try {
        submit(parse_control(text, data_.p()), from);
        return std::nullopt;
    } catch (const ProtocolError& e) {
        return error_reply(e);
    }
}

void Session::submit(ControlMessage msg, ClientId from) {
    std::lock_guard lock(mutex_);
    mailbox_.emplace_back(std::move(msg), from);
}

std::string Session::state_json_locked() const {
    json state{
        {"eps", spec_.eps()},
        {"h", spec_.h()},
        {"h_explicit", spec_.source() == SliceSpec::Source::ExplicitH},
        {"anchor", anchor_data_ ? vector_json(*anchor_data_) : json(nullptr)},
        {"paused", paused_},
        {"step_angle", cfg_.step_angle},
        {"seed", cfg_.seed},
    };
    return state.dump();
}

std::string Session::apply(const ControlMessage& msg) {
    using Kind = ControlMessage::Kind;
    try {
        switch (msg.kind) {
        case Kind::SetEps: spec_ = spec_.with_eps(msg.scalar); break;
        case Kind::SetH: spec_ = spec_.with_h(msg.scalar); break;
        case Kind::SetAnchor: {
            Vector working = data_.to_working(msg.vector);
            spec_ = spec_.with_anchor(std::move(working));
            anchor_data_ = msg.vector;
            break;
        }
        case Kind::ClearAnchor:
            spec_ = spec_.with_anchor(std::nullopt);
            anchor_data_.reset();
            break;
        case Kind::Pause: paused_ = true; break;
        case Kind::Resume:
            paused_ = false;
            pending_steps_ = 0;
            break;
        case Kind::StepOnce:
            paused_ = true;
            ++pending_steps_;
            break;
        case Kind::SetSpeed:
            tour_->set_step_angle(msg.scalar);
            cfg_.step_angle = msg.scalar;
            break;
        case Kind::Reseed:
            cfg_.seed = msg.seed;
            tour_ = std::make_unique<GrandTour>(data_.p(), cfg_);
            break;
        }
    } catch (const Error& e) {
        return error_reply(ProtocolError("value", e.what()));
    }
    return R"({"type":"ack","kind":")" + std::string(control_kind_name(msg.kind)) +
           R"(","state":)" + state_json_locked() + "}";
}

Session::Tick Session::tick() {
    Tick result;
    bool emit = false;
    SliceSpec spec = spec_;
    std::optional<Vector> anchor_data;
    {
        std::lock_guard lock(mutex_);
        for (const auto& [msg, from] : mailbox_) result.replies.push_back({from, apply(msg)});
        mailbox_.clear();
        if (!paused_) {
            emit = true;
        } else if (pending_steps_ > 0) {
            --pending_steps_;
            emit = true;
        }
        spec = spec_;
        anchor_data = anchor_data_;
    }
    if (!emit) return result;

    const auto tf = tour_->next();
    if (!tf) return result;
    SliceView view = slice_view(data_, tf->basis, spec);
    FrameMessage frame;
    frame.frame_index = next_index_++;
    frame.t = tf->t;
    frame.segment = tf->segment;
    frame.basis = tf->basis.matrix();
    frame.points = std::move(view.projected);
    frame.inside = std::move(view.inside);
    frame.distances = std::move(view.distances);
    frame.h = spec.h();
    frame.eps = spec.eps();
    frame.anchor = std::move(anchor_data);
    frame.column_names = data_.column_names;
    result.frame = std::move(frame);
    return result;
}

SessionState Session::state() const {
    std::lock_guard lock(mutex_);
    return SessionState{spec_.eps(), spec_.h(), spec_.source() == SliceSpec::Source::ExplicitH,
                        anchor_data_, paused_, cfg_.step_angle, cfg_.seed};
}

std::string Session::hello() const {
    std::lock_guard lock(mutex_);
    json obj{{"type", "hello"},
             {"n", data_.n()},
             {"p", data_.p()},
             {"column_names", data_.column_names},
             {"labels", data_.labels},
             {"heartbeat_seconds", 10},
             {"state", json::parse(state_json_locked())}};
    return obj.dump();
}

} // namespace slicetour
