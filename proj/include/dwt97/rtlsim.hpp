#pragma once

// Cycle-accurate register-transfer model of the five lifting datapaths.
//
// A design is a netlist of registers. Each register's next value is a small
// combinational expression (adders, shifts, generic multipliers) over the
// current register contents and the input port. All registers clock
// together. Values are held exactly; every register carries a declared range
// and leaving it is an overflow fault.
//
// Timing: input pair j is presented on the call to step() numbered j
// (0-based). The 9/7 lifting network looks two pairs ahead, so output pair j
// cannot be complete before input pair j + 2 has arrived; it is returned
// exactly latency() calls after that. Latency equals the number of register
// stages on the longest input-to-output path.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dwt97/fixpoint.hpp"
#include "dwt97/lifting.hpp"

namespace dwt97::rtl {

enum class DesignKind {
    BehavioralMultiplier = 1,
    BehavioralShiftAdd = 2,
    BehavioralPipelinedShiftAdd = 3,
    StructuralShiftAdd = 4,
    StructuralPipelinedShiftAdd = 5,
};

inline constexpr std::array<DesignKind, 5> kAllDesigns = {
    DesignKind::BehavioralMultiplier, DesignKind::BehavioralShiftAdd, DesignKind::BehavioralPipelinedShiftAdd,
    DesignKind::StructuralShiftAdd, DesignKind::StructuralPipelinedShiftAdd};

int design_number(DesignKind kind);
/// Throws RangeError outside 1..5.
DesignKind design_from_number(int number);
std::string_view to_string(DesignKind kind);
bool is_pipelined(DesignKind kind);
bool is_structural(DesignKind kind);

/// Stage counts: 8 for designs 1, 2, 4 and 21 for designs 3, 5.
inline constexpr int kShortPipelineStages = 8;
inline constexpr int kArithmeticPipelineStages = 21;
/// Pairs of lookahead in the lifting network (alpha and gamma each read i+1).
inline constexpr int kLookaheadPairs = 2;

/// Which datapath value a register holds. The architectural classes carry the
/// published register bounds; Internal registers (pre-adds, partial sums,
/// products) carry ranges propagated from their operands.
enum class SignalClass { Input, Alpha, Beta, Gamma, Delta, Low, High, Internal };

std::string_view to_string(SignalClass c);

struct ValueRange {
    std::int64_t min = 0;
    std::int64_t max = 0;

    bool contains(std::int64_t v) const { return v >= min && v <= max; }
    friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

struct RegisterSpec {
    std::string name;
    int width = 0;
    ValueRange declared_range;
    SignalClass signal = SignalClass::Internal;
    int stage = 0;  ///< 1-based; alignment delays take the stage after their source
    bool is_delay = false;
};

/// Published bounds, index by SignalClass (Internal has none).
ValueRange declared_range_for(SignalClass c);
int declared_width_for(SignalClass c);

// ---------------------------------------------------------------------------
// Multiplier schedules

/// Operand of a schedule op: node 0 is the multiplicand, node k + 1 the result
/// of ops[k]; kZeroNode is the constant 0.
struct ScheduleOperand {
    int node = 0;
    int shift = 0;

    friend bool operator==(const ScheduleOperand&, const ScheduleOperand&) = default;
};

inline constexpr int kZeroNode = -1;

struct AddOp {
    ScheduleOperand lhs;
    ScheduleOperand rhs;
    bool subtract = false;
    int level = 1;  ///< 1-based adder level inside the multiplication
};

/// How the partial products of one constant multiplication are reduced.
struct MultiplierSchedule {
    ShiftAddPlan plan;
    std::vector<AddOp> ops;
    ScheduleOperand result;
    /// Indices of the two terms merged into a shared sub-expression, if any.
    std::optional<std::array<int, 4>> shared_terms;

    int adder_count() const { return static_cast<int>(ops.size()); }
    int depth() const;
    /// Reference evaluation of the schedule on one operand.
    std::int64_t evaluate(std::int64_t x) const;
};

/// Balanced reduction: all ready operands are paired at every level.
MultiplierSchedule tree_schedule(const ShiftAddPlan& plan);
/// Linear accumulation in partial-product order.
MultiplierSchedule chain_schedule(const ShiftAddPlan& plan);

/// Adders one lifting step or scaling spends: the reduction, plus the pre-add
/// and final add for the four lifting steps. Canonical constants give
/// 6, 7, 5, 5, 4, 2.
int multiplication_adder_count(CoeffName name, const MultiplierSchedule& schedule);

// ---------------------------------------------------------------------------
// Netlist and model

enum class NodeOp { Input, Reg, Zero, Add, Sub, Shl, Shr8, Mul };

struct NetNode {
    NodeOp op = NodeOp::Zero;
    int a = -1;
    int b = -1;
    int amount = 0;             ///< shift, input lane, or register index
    std::int64_t constant = 0;  ///< Mul only
    int constant_bits = 0;      ///< Mul only
    ValueRange range;           ///< statically propagated
    int width = 1;
    int adder_depth = 0;        ///< adders on the longest path from a register
    std::string label;          ///< step.action for adders and multipliers
};

struct NetRegister {
    RegisterSpec spec;
    int next = -1;  ///< node computing the next value
};

struct StageDescription {
    int index = 0;
    std::vector<std::string> registers;
    std::vector<std::string> actions;  ///< labels of adders / multipliers feeding this stage
};

struct Netlist {
    DesignKind kind = DesignKind::BehavioralMultiplier;
    std::vector<NetNode> nodes;  ///< topological order
    std::vector<NetRegister> registers;
    int low_out = -1;            ///< register indices of the outputs
    int high_out = -1;
    int output_timing = 0;       ///< T of the output registers (latency + lookahead)
    int stage_count = 0;
};

struct InputPair {
    std::int32_t even = 0;
    std::int32_t odd = 0;
};

struct OutputPair {
    std::int64_t low = 0;
    std::int64_t high = 0;

    friend bool operator==(const OutputPair&, const OutputPair&) = default;
};

enum class OverflowPolicy {
    Halt,    ///< throw OverflowFault on the first register outside its range
    Record,  ///< keep the exact value, log the event, continue
};

struct OverflowEvent {
    std::int64_t cycle = 0;
    int register_index = 0;
    std::int64_t value = 0;
};

/// One design instance with its register state. Single owner; copying clones
/// the state and shares the immutable netlist.
class PipelineModel {
public:
    explicit PipelineModel(std::shared_ptr<const Netlist> netlist);

    DesignKind kind() const { return net_->kind; }
    int latency() const { return net_->output_timing - kLookaheadPairs; }
    int stage_count() const { return net_->stage_count; }
    const Netlist& netlist() const { return *net_; }
    std::vector<RegisterSpec> registers() const;
    std::vector<StageDescription> stages() const;
    /// Longest adder chain between two registers (generic multipliers count as
    /// their array depth).
    int critical_path_adders() const;

    /// Clears registers, cycle count and the overflow log.
    void reset();
    /// Advances one clock. Returns the output registers as they stand during
    /// this cycle, if they hold a result for a presented input.
    std::optional<OutputPair> step(std::optional<InputPair> input);
    std::int64_t cycle() const { return cycle_; }

    void set_overflow_policy(OverflowPolicy p) { policy_ = p; }
    OverflowPolicy overflow_policy() const { return policy_; }
    const std::vector<OverflowEvent>& overflow_events() const { return events_; }
    void clear_overflow_events() { events_.clear(); }

    /// Tab-separated name=value line per cycle; nullptr disables.
    void set_trace(std::ostream* os) { trace_ = os; }

    /// Current value of a register by index.
    std::int64_t register_value(int index) const { return state_[static_cast<std::size_t>(index)]; }

private:
    std::int64_t evaluate_adder(const NetNode& n, std::int64_t a, std::int64_t b, int width_a, int width_b) const;

    std::shared_ptr<const Netlist> net_;
    std::vector<std::int64_t> state_;
    std::vector<std::int64_t> values_;
    std::vector<bool> presence_;  ///< ring buffer of presented inputs
    std::int64_t cycle_ = 0;
    OverflowPolicy policy_ = OverflowPolicy::Halt;
    std::vector<OverflowEvent> events_;
    std::ostream* trace_ = nullptr;
};

/// Reduction schedules used for every constant of a design.
struct DesignSchedule {
    std::array<MultiplierSchedule, 6> multipliers;

    const MultiplierSchedule& operator[](CoeffName n) const { return multipliers[static_cast<std::size_t>(n)]; }
};

/// Chains for designs 2 and 4, balanced trees for 3 and 5 (design 1 uses
/// generic multipliers and ignores the schedule).
DesignSchedule default_schedule(DesignKind kind, const CoeffSet& coeffs);

PipelineModel build_design(DesignKind kind, const CoeffSet& coeffs = canonical_coeffs());
PipelineModel build_design(DesignKind kind, const CoeffSet& coeffs, const DesignSchedule& schedule);

/// Streams a signal through the model: whole-sample symmetric extension by
/// two pairs on each side, then `latency` more cycles of extension to drain
/// the pipeline. Resets the model first. Samples must be signed 8-bit.
BandPair<std::int32_t> run_stream(PipelineModel& model, std::span<const std::int32_t> s);

struct StageAssignment {
    int stage = 0;
    std::vector<std::string> additions;
};

/// Adders per stage of a pipelined design (3 or 5). Throws RangeError for
/// the 8-stage designs.
std::vector<StageAssignment> stage_schedule(DesignKind kind, const CoeffSet& coeffs = canonical_coeffs());

/// Largest number of additions any register's next-value logic chains
/// together. 1 for a valid arithmetic pipeline.
int max_additions_per_stage(const PipelineModel& model);

}  // namespace dwt97::rtl
