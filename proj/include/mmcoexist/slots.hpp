// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mmcoexist {

/// One numerology row: subcarrier spacing 15*2^mu kHz, 14-symbol slots, 12
/// subcarriers per PRB. Cyclic prefix lengths are the usual approximations
/// (4.8/2.4/1.2/0.6/0.3 us), not the exact standard values.
struct NumerologyConfig {
    int mu = 0;
    double scs_khz = 15.0;
    double symbol_length_us = 0.0;
    double cp_length_us = 0.0;
    double frame_length_ms = 10.0;
    int subframes_per_frame = 10;
    int slots_per_subframe = 1;
    double slot_length_us = 1000.0;
    int symbols_per_slot = 14;
    int subcarriers_per_prb = 12;
    double prb_width_mhz = 0.18;
};

/// Throws std::out_of_range unless mu is in 0..4.
NumerologyConfig numerology(int mu);

/// Percentage of a channel-occupancy window left unoccupied when downlink
/// access without headers leaves exactly one slot empty per occupancy:
/// slot_length(mu) / mcot, as a percent. MCOT is 9 ms at 60 GHz.
double unoccupied_fraction_percent(int mu, double mcot_ms);

enum class SlotDirection { downlink, uplink };

enum class SlotRegion { dl_header, ul_header, dl_control, data, guard, ul_control };

std::string region_name(SlotRegion region);

struct RegionSpan {
    SlotRegion region;
    int symbols = 0;
};

/// Control/data symbol split inside the 14-symbol slot. Any split keeps the
/// region ordering; these defaults leave 10 data symbols.
struct SlotSplit {
    int dl_control_symbols = 2;
    int guard_symbols = 1;
    int ul_control_symbols = 1;
};

/// Self-contained slot with the handshake messages placed in it. Headers are
/// a preparation stage preceding the 14 symbols, so they do not count towards
/// the 14-symbol budget.
///
/// Placement rules:
///  - downlink with headers: RtoTx in the DL header, RtoRx in the UL header,
///    data in the same slot (no handshake delay);
///  - downlink without headers: RtoTx in DL control of slot n, RtoRx in UL
///    control of slot n, data in slot n+1 (one slot of handshake delay);
///  - uplink either way: RtoTx rides the scheduling request in UL control of
///    slot n, RtoRx rides the UL grant in DL control of slot n+1, data in
///    slot n+1 - no latency beyond the existing grant cycle.
struct SlotLayout {
    SlotDirection direction = SlotDirection::downlink;
    bool has_headers = false;
    std::vector<RegionSpan> regions;

    SlotRegion rtotx_region = SlotRegion::dl_control;
    int rtotx_slot_offset = 0;
    SlotRegion rtorx_region = SlotRegion::ul_control;
    int rtorx_slot_offset = 0;
    int data_slot_offset = 0;

    // Slots between data-ready and data transmission caused by the handshake.
    int handshake_latency_slots = 0;
    // Latency beyond the baseline the direction already pays (the SR/grant
    // cycle for uplink, nothing for downlink).
    int extra_latency_slots = 0;
};

SlotLayout build_slot_layout(SlotDirection direction, bool has_headers,
                             const SlotSplit& split = SlotSplit{});

enum class CallFlowEventType {
    data_arrival,
    lbt_idle,
    lbt_busy,
    rtotx_sent,
    lbr_idle,
    lbr_busy,
    rtorx_sent,
    deferred,
    data_tx_start,
};

std::string event_name(CallFlowEventType type);

struct CallFlowEvent {
    long slot = 0;
    CallFlowEventType type = CallFlowEventType::data_arrival;
};

struct CallFlowTrace {
    std::vector<CallFlowEvent> events;
};

/// One line per event: `slot=<n> event=<name>`.
std::string to_text(const CallFlowTrace& trace);

using BusyPredicate = std::function<bool(long slot)>;

/// Slot-quantized handshake simulation. Per arrival: LBT at the BS repeats
/// until idle, then RtoTx goes out; the MT senses per busy_at_mt and defers
/// slot by slot until idle, then answers RtoRx; data starts at the layout's
/// data slot once a second LBT succeeds there. Arrivals are served in order;
/// a flow cannot start before the previous data transmission is out.
CallFlowTrace simulate_call_flow(const std::vector<long>& arrival_slots,
                                 const BusyPredicate& busy_at_mt, const BusyPredicate& busy_at_bs,
                                 const SlotLayout& layout);

}  // namespace mmcoexist
