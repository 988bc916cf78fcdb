// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/slots.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmcoexist {

NumerologyConfig numerology(int mu) {
    if (mu < 0 || mu > 4) {
        throw std::out_of_range("numerology: mu must be in 0..4");
    }
    static constexpr double kCpApproxUs[] = {4.8, 2.4, 1.2, 0.6, 0.3};

    NumerologyConfig config;
    config.mu = mu;
    const int pow2 = 1 << mu;
    config.scs_khz = 15.0 * pow2;
    config.symbol_length_us = 1000.0 / config.scs_khz;
    config.cp_length_us = kCpApproxUs[mu];
    config.frame_length_ms = 10.0;
    config.subframes_per_frame = 10;
    config.slots_per_subframe = pow2;
    config.slot_length_us = 1000.0 / pow2;
    config.symbols_per_slot = 14;
    config.subcarriers_per_prb = 12;
    config.prb_width_mhz = 12.0 * config.scs_khz / 1000.0;
    return config;
}

double unoccupied_fraction_percent(int mu, double mcot_ms) {
    if (!(mcot_ms > 0.0)) {
        throw std::invalid_argument("unoccupied_fraction_percent: mcot_ms must be > 0");
    }
    return numerology(mu).slot_length_us / (mcot_ms * 1000.0) * 100.0;
}

std::string region_name(SlotRegion region) {
    switch (region) {
        case SlotRegion::dl_header: return "dl_header";
        case SlotRegion::ul_header: return "ul_header";
        case SlotRegion::dl_control: return "dl_control";
        case SlotRegion::data: return "data";
        case SlotRegion::guard: return "guard";
        case SlotRegion::ul_control: return "ul_control";
    }
    throw std::invalid_argument("region_name: unknown region");
}

SlotLayout build_slot_layout(SlotDirection direction, bool has_headers, const SlotSplit& split) {
    const int data_symbols =
        14 - split.dl_control_symbols - split.guard_symbols - split.ul_control_symbols;
    if (data_symbols < 0) {
        throw std::invalid_argument("build_slot_layout: control/guard symbols exceed the slot");
    }

    SlotLayout layout;
    layout.direction = direction;
    layout.has_headers = has_headers;

    if (has_headers) {
        // Preparation stage ahead of the 14 symbols; one nominal symbol each.
        if (direction == SlotDirection::downlink) {
            layout.regions.push_back({SlotRegion::dl_header, 1});
        }
        layout.regions.push_back({SlotRegion::ul_header, 1});
    }
    layout.regions.push_back({SlotRegion::dl_control, split.dl_control_symbols});
    layout.regions.push_back({SlotRegion::data, data_symbols});
    layout.regions.push_back({SlotRegion::guard, split.guard_symbols});
    layout.regions.push_back({SlotRegion::ul_control, split.ul_control_symbols});

    if (direction == SlotDirection::downlink) {
        if (has_headers) {
            layout.rtotx_region = SlotRegion::dl_header;
            layout.rtorx_region = SlotRegion::ul_header;
            layout.rtorx_slot_offset = 0;
            layout.data_slot_offset = 0;
        } else {
            layout.rtotx_region = SlotRegion::dl_control;
            layout.rtorx_region = SlotRegion::ul_control;
            layout.rtorx_slot_offset = 0;
            layout.data_slot_offset = 1;
        }
        layout.handshake_latency_slots = layout.data_slot_offset;
        layout.extra_latency_slots = layout.data_slot_offset;
    } else {
        // RtoTx rides the scheduling request, RtoRx rides the UL grant.
        layout.rtotx_region = SlotRegion::ul_control;
        layout.rtorx_region = SlotRegion::dl_control;
        layout.rtorx_slot_offset = 1;
        layout.data_slot_offset = 1;
        layout.handshake_latency_slots = layout.data_slot_offset;
        layout.extra_latency_slots = 0;  // the grant cycle costs that slot anyway
    }
    return layout;
}

std::string event_name(CallFlowEventType type) {
    switch (type) {
        case CallFlowEventType::data_arrival: return "data_arrival";
        case CallFlowEventType::lbt_idle: return "lbt_idle";
        case CallFlowEventType::lbt_busy: return "lbt_busy";
        case CallFlowEventType::rtotx_sent: return "rtotx_sent";
        case CallFlowEventType::lbr_idle: return "lbr_idle";
        case CallFlowEventType::lbr_busy: return "lbr_busy";
        case CallFlowEventType::rtorx_sent: return "rtorx_sent";
        case CallFlowEventType::deferred: return "deferred";
        case CallFlowEventType::data_tx_start: return "data_tx_start";
    }
    throw std::invalid_argument("event_name: unknown event");
}

std::string to_text(const CallFlowTrace& trace) {
    std::string out;
    for (const CallFlowEvent& event : trace.events) {
        out += "slot=" + std::to_string(event.slot) + " event=" + event_name(event.type) + "\n";
    }
    return out;
}

CallFlowTrace simulate_call_flow(const std::vector<long>& arrival_slots,
                                 const BusyPredicate& busy_at_mt, const BusyPredicate& busy_at_bs,
                                 const SlotLayout& layout) {
    if (!std::is_sorted(arrival_slots.begin(), arrival_slots.end())) {
        throw std::invalid_argument("simulate_call_flow: arrivals must be sorted");
    }

    CallFlowTrace trace;
    auto emit = [&trace](long slot, CallFlowEventType type) {
        trace.events.push_back({slot, type});
    };

    long next_free = 0;  // first slot the BS may start a new flow in
    for (long arrival : arrival_slots) {
        emit(arrival, CallFlowEventType::data_arrival);
        long slot = std::max(arrival, next_free);

        // LBT gating the RtoTx message.
        while (busy_at_bs(slot)) {
            emit(slot, CallFlowEventType::lbt_busy);
            ++slot;
        }
        emit(slot, CallFlowEventType::lbt_idle);
        emit(slot, CallFlowEventType::rtotx_sent);

        // Receiver-side sense; the RtoRx answer is postponed until idle.
        while (busy_at_mt(slot)) {
            emit(slot, CallFlowEventType::lbr_busy);
            emit(slot, CallFlowEventType::deferred);
            ++slot;
        }
        emit(slot, CallFlowEventType::lbr_idle);
        emit(slot + layout.rtorx_slot_offset, CallFlowEventType::rtorx_sent);

        // Second LBT right before the data slot.
        long data_slot = slot + layout.data_slot_offset;
        while (busy_at_bs(data_slot)) {
            emit(data_slot, CallFlowEventType::lbt_busy);
            ++data_slot;
        }
        emit(data_slot, CallFlowEventType::lbt_idle);
        emit(data_slot, CallFlowEventType::data_tx_start);
        next_free = data_slot + 1;
    }
    return trace;
}

}  // namespace mmcoexist
