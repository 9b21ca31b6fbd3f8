#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicetour/error.hpp"
#include "slicetour/linalg.hpp"
#include "slicetour/slicer.hpp"
#include "slicetour/tour.hpp"

namespace slicetour {

// Live-session wire protocol. Every message is a JSON object.
//
// client -> server  {"kind": "set_eps", "value": 0.2}
//   set_eps     value: number in (0, 1]
//   set_h       value: number > 0 (working coordinates)
//   set_anchor  value: array of p numbers (data coordinates)
//   clear_anchor, pause, resume, step_once   (no value)
//   set_speed   value: radians per frame, number > 0
//   reseed      value: non-negative integer
//
// server -> client
//   {"type": "hello", ...}      once, on connect
//   {"type": "frame", ...}      see FrameMessage
//   {"type": "ack", "kind": k, "state": {...}}
//   {"type": "error", "field": f, "message": m}

class ProtocolError : public Error {
public:
    ProtocolError(std::string field, const std::string& message)
        : Error(message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct ControlMessage {
    enum class Kind { SetEps, SetH, SetAnchor, ClearAnchor, Pause, Resume, StepOnce, SetSpeed, Reseed };

    Kind kind = Kind::Pause;
    double scalar = 0.0;
    Vector vector;
    std::uint64_t seed = 0;
};

std::string_view control_kind_name(ControlMessage::Kind kind);

// Validates kind, payload type and arity against p. Throws ProtocolError
// naming the offending field ("message", "kind" or "value").
ControlMessage parse_control(std::string_view text, int p);
std::string serialize(const ControlMessage& msg);

struct FrameMessage {
    std::size_t frame_index = 0;
    double t = 0.0;
    std::size_t segment = 0;
    Matrix basis;      // p x 2; row-major on the wire
    Matrix points;     // n x 2; row-major on the wire
    std::vector<bool> inside;
    Vector distances;
    double h = 0.0;
    double eps = 0.0;
    std::optional<Vector> anchor;  // data coordinates
    std::vector<std::string> column_names;
};

std::string serialize(const FrameMessage& msg);
// Throws ProtocolError on malformed or inconsistent input.
FrameMessage parse_frame_message(std::string_view text);

struct SessionState {
    double eps = kDefaultEps;
    double h = 0.0;
    bool h_explicit = false;
    std::optional<Vector> anchor;  // data coordinates
    bool paused = false;
    double step_angle = TourConfig::kDefaultStepAngle;
    std::uint64_t seed = 1;
};

// Tour engine for one dataset. Transport threads call submit(); the single
// producer calls tick() once per frame period. Queued controls are applied
// atomically at the start of tick(), before the frame is built, so every
// emitted frame reflects one consistent state.
class Session {
public:
    using ClientId = std::uint64_t;

    struct Reply {
        ClientId to;
        std::string text;
    };

    struct Tick {
        std::vector<Reply> replies;
        std::optional<FrameMessage> frame;
    };

    // `data` must already be preprocessed; `spec` is in working coordinates
    // and `anchor_data` is the same anchor in data coordinates, if any.
    Session(Dataset data, TourConfig cfg, SliceSpec spec,
            std::optional<Vector> anchor_data = std::nullopt);

    // Returns an error reply for malformed input (nothing is queued).
    std::optional<std::string> submit(std::string_view text, ClientId from);
    void submit(ControlMessage msg, ClientId from);

    Tick tick();

    SessionState state() const;
    std::string hello() const;
    const Dataset& data() const { return data_; }

private:
    std::string apply(const ControlMessage& msg);
    std::string state_json_locked() const;

    Dataset data_;
    TourConfig cfg_;
    SliceSpec spec_;
    std::optional<Vector> anchor_data_;
    std::unique_ptr<GrandTour> tour_;
    bool paused_ = false;
    int pending_steps_ = 0;
    std::size_t next_index_ = 0;

    mutable std::mutex mutex_;
    std::vector<std::pair<ControlMessage, ClientId>> mailbox_;
};

std::string error_reply(const ProtocolError& e);

} // namespace slicetour
