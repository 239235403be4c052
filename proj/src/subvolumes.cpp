#include "vs360/subvolumes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace vs360 {
namespace {

TrackEntry entry_from_region(const SalientRegion& r) {
    TrackEntry e;
    e.erp_x = r.centroid_erp_x;
    e.erp_y = r.centroid_erp_y;
    e.sph = r.centroid_sph;
    e.observed = true;
    return e;
}

Vec3 slerp(const Vec3& a, const Vec3& b, double t) {
    const double cosw = std::clamp(a.dot(b), -1.0, 1.0);
    const double omega = std::acos(cosw);
    if (omega < 1e-9 || std::sin(omega) < 1e-9) {
        // parallel (or pathologically antipodal) endpoints
        return (a * (1.0 - t) + b * t).normalized();
    }
    const double s = std::sin(omega);
    return (a * (std::sin((1.0 - t) * omega) / s) + b * (std::sin(t * omega) / s)).normalized();
}

}  // namespace

void assign_regions(TrackerState& state, int frame_index,
                    const std::vector<SalientRegion>& regions, const TrackerParams& params) {
    if (frame_index <= state.last_frame)
        throw std::logic_error("assign_regions: frame " + std::to_string(frame_index) +
                               " is not after frame " + std::to_string(state.last_frame));
    if (params.frame_width <= 0 || params.frame_height <= 0)
        throw std::invalid_argument("assign_regions: tracker needs the ERP frame dimensions");
    state.last_frame = frame_index;

    // close tracks whose gap could no longer be filled (missing run > t4)
    for (std::size_t i = 0; i < state.open.size();) {
        if (frame_index - state.open[i].last_observed - 1 > params.t4) {
            state.closed.push_back(std::move(state.open[i].sv));
            state.open.erase(state.open.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }

    // all candidate pairs under t3, greedy by ascending distance
    struct Candidate {
        double dist;
        int region;
        int slot;
    };
    std::vector<Candidate> candidates;
    for (int r = 0; r < static_cast<int>(regions.size()); ++r)
        for (int s = 0; s < static_cast<int>(state.open.size()); ++s) {
            const auto& last = state.open[s].sv.track.at(state.open[s].last_observed);
            const double d =
                erp_pixel_distance(regions[r].centroid_erp_x, regions[r].centroid_erp_y,
                                   last.erp_x, last.erp_y, params.frame_width);
            if (d < params.t3) candidates.push_back({d, r, s});
        }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        return std::tie(a.dist, a.region, state.open[a.slot].sv.id) <
               std::tie(b.dist, b.region, state.open[b.slot].sv.id);
    });

    std::vector<bool> region_used(regions.size(), false);
    std::vector<bool> slot_used(state.open.size(), false);
    for (const auto& c : candidates) {
        if (region_used[c.region] || slot_used[c.slot]) continue;
        region_used[c.region] = true;
        slot_used[c.slot] = true;
        auto& open = state.open[c.slot];
        open.sv.track.emplace(frame_index, entry_from_region(regions[c.region]));
        open.sv.end_frame = frame_index;
        open.last_observed = frame_index;
    }

    // unmatched regions each start a new sub-volume
    for (int r = 0; r < static_cast<int>(regions.size()); ++r) {
        if (region_used[r]) continue;
        TrackerState::Open open;
        open.sv.id = state.next_id++;
        open.sv.start_frame = frame_index;
        open.sv.end_frame = frame_index;
        open.sv.track.emplace(frame_index, entry_from_region(regions[r]));
        open.last_observed = frame_index;
        state.open.push_back(std::move(open));
    }
}

void close_all(TrackerState& state) {
    for (auto& o : state.open) state.closed.push_back(std::move(o.sv));
    state.open.clear();
}

std::vector<SubVolume> fill_gaps(const SubVolume& sv, int t4, int frame_width,
                                 int frame_height) {
    if (sv.track.empty()) throw std::invalid_argument("fill_gaps: empty sub-volume");

    std::vector<SubVolume> pieces;
    SubVolume piece;
    piece.id = sv.id;
    auto it = sv.track.begin();
    piece.start_frame = piece.end_frame = it->first;
    piece.track.emplace(*it);

    for (auto prev = it++; it != sv.track.end(); prev = it++) {
        const int gap = it->first - prev->first - 1;
        if (gap > t4) {
            pieces.push_back(std::move(piece));
            piece = SubVolume{};
            piece.id = sv.id;
            piece.start_frame = it->first;
        } else if (gap > 0) {
            const Vec3 a = to_unit_vector(prev->second.sph);
            const Vec3 b = to_unit_vector(it->second.sph);
            for (int f = prev->first + 1; f < it->first; ++f) {
                const double t = static_cast<double>(f - prev->first) /
                                 static_cast<double>(it->first - prev->first);
                TrackEntry e;
                e.sph = to_spherical(slerp(a, b, t));
                const ErpCoord pc = spherical_to_erp(e.sph, frame_width, frame_height);
                e.erp_x = pc.px;
                e.erp_y = pc.py;
                e.observed = false;
                piece.track.emplace(f, e);
            }
        }
        piece.track.emplace(*it);
        piece.end_frame = it->first;
    }
    pieces.push_back(std::move(piece));
    return pieces;
}

std::vector<SubVolume> build_subvolumes(const std::vector<std::vector<SalientRegion>>& per_frame,
                                        const TrackerParams& params) {
    TrackerState state;
    for (int f = 0; f < static_cast<int>(per_frame.size()); ++f)
        assign_regions(state, f, per_frame[f], params);
    close_all(state);

    struct Keyed {
        int start, orig_id, piece;
        SubVolume sv;
    };
    std::vector<Keyed> keyed;
    for (const auto& sv : state.closed) {
        auto pieces = fill_gaps(sv, params.t4, params.frame_width, params.frame_height);
        for (int p = 0; p < static_cast<int>(pieces.size()); ++p) {
            if (pieces[p].length() < params.min_subvolume_len) continue;
            keyed.push_back({pieces[p].start_frame, sv.id, p, std::move(pieces[p])});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.start, a.orig_id, a.piece) < std::tie(b.start, b.orig_id, b.piece);
    });

    std::vector<SubVolume> out;
    out.reserve(keyed.size());
    for (int i = 0; i < static_cast<int>(keyed.size()); ++i) {
        keyed[i].sv.id = i;
        out.push_back(std::move(keyed[i].sv));
    }
    return out;
}

}  // namespace vs360
