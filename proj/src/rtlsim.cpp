#include "dwt97/rtlsim.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "dwt97/adder.hpp"
#include "dwt97/errors.hpp"

namespace dwt97::rtl {

// ---------------------------------------------------------------------------
// Design metadata

int design_number(DesignKind kind) { return static_cast<int>(kind); }

DesignKind design_from_number(int number) {
    if (number < 1 || number > 5) throw RangeError("design must be 1..5, got " + std::to_string(number));
    return static_cast<DesignKind>(number);
}

std::string_view to_string(DesignKind kind) {
    switch (kind) {
        case DesignKind::BehavioralMultiplier: return "behavioral-multiplier";
        case DesignKind::BehavioralShiftAdd: return "behavioral-shift-add";
        case DesignKind::BehavioralPipelinedShiftAdd: return "behavioral-pipelined-shift-add";
        case DesignKind::StructuralShiftAdd: return "structural-shift-add";
        case DesignKind::StructuralPipelinedShiftAdd: return "structural-pipelined-shift-add";
    }
    return "?";
}

bool is_pipelined(DesignKind kind) {
    return kind == DesignKind::BehavioralPipelinedShiftAdd || kind == DesignKind::StructuralPipelinedShiftAdd;
}

bool is_structural(DesignKind kind) {
    return kind == DesignKind::StructuralShiftAdd || kind == DesignKind::StructuralPipelinedShiftAdd;
}

std::string_view to_string(SignalClass c) {
    switch (c) {
        case SignalClass::Input: return "input";
        case SignalClass::Alpha: return "after-alpha";
        case SignalClass::Beta: return "after-beta";
        case SignalClass::Gamma: return "after-gamma";
        case SignalClass::Delta: return "after-delta";
        case SignalClass::Low: return "low";
        case SignalClass::High: return "high";
        case SignalClass::Internal: return "internal";
    }
    return "?";
}

ValueRange declared_range_for(SignalClass c) {
    switch (c) {
        case SignalClass::Input: return {-128, 127};
        case SignalClass::Alpha: return {-530, 530};
        case SignalClass::Beta: return {-184, 184};
        case SignalClass::Gamma: return {-205, 205};
        case SignalClass::Delta: return {-366, 366};
        case SignalClass::Low: return {-298, 298};
        case SignalClass::High: return {-252, 252};
        case SignalClass::Internal: break;
    }
    throw RangeError("internal registers have no published range");
}

int declared_width_for(SignalClass c) {
    switch (c) {
        case SignalClass::Input: return 8;
        case SignalClass::Alpha: return 11;
        case SignalClass::Beta: return 9;
        case SignalClass::Gamma: return 9;
        case SignalClass::Delta: return 10;
        case SignalClass::Low: return 10;
        case SignalClass::High: return 9;
        case SignalClass::Internal: break;
    }
    throw RangeError("internal registers have no published width");
}

// ---------------------------------------------------------------------------
// Netlist construction

namespace {

int range_width(const ValueRange& r) { return std::max(bits_for(r.min), bits_for(r.max)); }

std::int64_t floor_shift(std::int64_t v) { return v >> kQ8Shift; }

// A value stream as the builder sees it: the node reading it, and its timing
// T (index i is readable during cycle i + T).
struct Sig {
    int read_node = -1;
    int reg = -1;  ///< -1 for the input port
    int timing = 0;
    int stage = 0;
    std::string name;
};

class NetBuilder {
public:
    explicit NetBuilder(DesignKind kind) { net_.kind = kind; }

    Sig input(int lane, std::string name) {
        NetNode n;
        n.op = NodeOp::Input;
        n.amount = lane;
        n.range = declared_range_for(SignalClass::Input);
        n.width = declared_width_for(SignalClass::Input);
        return {push(std::move(n)), -1, 0, 0, std::move(name)};
    }

    int binary(NodeOp op, int a, int b, std::string label) {
        const auto& na = node(a);
        const auto& nb = node(b);
        NetNode n;
        n.op = op;
        n.a = a;
        n.b = b;
        n.range = op == NodeOp::Add ? ValueRange{na.range.min + nb.range.min, na.range.max + nb.range.max}
                                    : ValueRange{na.range.min - nb.range.max, na.range.max - nb.range.min};
        n.width = range_width(n.range);
        n.adder_depth = std::max(na.adder_depth, nb.adder_depth) + 1;
        n.label = std::move(label);
        return push(std::move(n));
    }

    int shl(int a, int k) {
        if (k == 0) return a;
        const auto& na = node(a);
        NetNode n;
        n.op = NodeOp::Shl;
        n.a = a;
        n.amount = k;
        n.range = {na.range.min << k, na.range.max << k};
        n.width = range_width(n.range);
        n.adder_depth = na.adder_depth;
        return push(std::move(n));
    }

    int shr8(int a) {
        const auto& na = node(a);
        NetNode n;
        n.op = NodeOp::Shr8;
        n.a = a;
        n.range = {floor_shift(na.range.min), floor_shift(na.range.max)};
        n.width = range_width(n.range);
        n.adder_depth = na.adder_depth;
        return push(std::move(n));
    }

    int zero() {
        NetNode n;
        n.op = NodeOp::Zero;
        return push(std::move(n));
    }

    // Generic array multiplier by a constant (design 1).
    int mul(int a, const ScaledCoeff& c, std::string label) {
        const auto& na = node(a);
        NetNode n;
        n.op = NodeOp::Mul;
        n.a = a;
        n.constant = c.scaled_int;
        n.constant_bits = c.bit_width;
        const std::int64_t p = na.range.min * c.scaled_int, q = na.range.max * c.scaled_int;
        n.range = {std::min(p, q), std::max(p, q)};
        n.width = range_width(n.range);
        n.adder_depth = na.adder_depth + (c.bit_width - 1);
        n.label = std::move(label);
        return push(std::move(n));
    }

    // Node reading stream `s` at index i + offset during cycle i + at.
    int tap(const Sig& s, int offset, int at) {
        const int delay = at - s.timing - offset;
        if (delay < 0)
            throw std::logic_error("schedule reads '" + s.name + "' before it exists");
        if (delay == 0) return s.read_node;
        auto& chain = delays_[s.name];
        while (static_cast<int>(chain.size()) < delay) {
            const int src_node = chain.empty() ? s.read_node : chain.back().read_node;
            RegisterSpec spec;
            if (s.reg >= 0) {
                spec = net_.registers[static_cast<std::size_t>(s.reg)].spec;
            } else {
                spec.signal = SignalClass::Input;
                spec.declared_range = declared_range_for(SignalClass::Input);
                spec.width = declared_width_for(SignalClass::Input);
            }
            const int k = static_cast<int>(chain.size()) + 1;
            spec.name = s.name + ".z" + std::to_string(k);
            spec.stage = s.stage + k;
            spec.is_delay = true;
            chain.push_back(add_register(std::move(spec), src_node, s.timing + k));
        }
        return chain[static_cast<std::size_t>(delay - 1)].read_node;
    }

    Sig delayed(const Sig& s, int timing) {
        if (timing == s.timing) return s;
        tap(s, 0, timing);
        return delays_[s.name][static_cast<std::size_t>(timing - s.timing - 1)];
    }

    // Registers the value of `next` computed during cycle i + at.
    Sig reg(std::string name, SignalClass cls, int stage, int next, int at) {
        RegisterSpec spec;
        spec.name = std::move(name);
        spec.signal = cls;
        spec.stage = stage;
        if (cls == SignalClass::Internal) {
            spec.declared_range = node(next).range;
            spec.width = range_width(spec.declared_range);
        } else {
            spec.declared_range = declared_range_for(cls);
            spec.width = declared_width_for(cls);
        }
        return add_register(std::move(spec), next, at + 1);
    }

    Netlist finish(const Sig& low, const Sig& high) && {
        if (low.timing != high.timing) throw std::logic_error("output registers misaligned");
        net_.low_out = low.reg;
        net_.high_out = high.reg;
        net_.output_timing = low.timing;
        int stages = 0;
        for (const auto& r : net_.registers)
            if (!r.spec.is_delay) stages = std::max(stages, r.spec.stage);
        net_.stage_count = stages;
        return std::move(net_);
    }

    const NetNode& node(int id) const { return net_.nodes[static_cast<std::size_t>(id)]; }

private:
    int push(NetNode n) {
        net_.nodes.push_back(std::move(n));
        return static_cast<int>(net_.nodes.size()) - 1;
    }

    Sig add_register(RegisterSpec spec, int next, int timing) {
        const int index = static_cast<int>(net_.registers.size());
        Sig s;
        s.name = spec.name;
        s.stage = spec.stage;
        s.timing = timing;
        s.reg = index;
        NetNode read;
        read.op = NodeOp::Reg;
        read.amount = index;
        read.range = spec.declared_range;
        read.width = spec.width;
        net_.registers.push_back({std::move(spec), next});
        s.read_node = push(std::move(read));
        return s;
    }

    Netlist net_;
    std::map<std::string, std::vector<Sig>> delays_;
};

// Lifting step: target = base[i] + floor(c * (nbr[i + o1] + nbr[i + o2]) / 256).
struct StepSpec {
    CoeffName coeff;
    SignalClass result;
    std::string result_name;
    int nbr_lo;  ///< smaller neighbour offset
    int nbr_hi;
};

class DesignAssembler {
public:
    DesignAssembler(DesignKind kind, const CoeffSet& coeffs, const DesignSchedule& schedule)
        : kind_(kind), coeffs_(coeffs), schedule_(schedule), b_(kind) {}

    Netlist build() && {
        Sig even = b_.input(0, "in.even");
        Sig odd = b_.input(1, "in.odd");
        int stage = 1;
        if (!is_pipelined(kind_)) {
            even = b_.reg("even", SignalClass::Input, stage, even.read_node, 0);
            odd = b_.reg("odd", SignalClass::Input, stage, odd.read_node, 0);
            ++stage;
        }
        const Sig d1 = step({CoeffName::Alpha, SignalClass::Alpha, "d1", 0, 1}, odd, even, stage);
        const Sig s1 = step({CoeffName::Beta, SignalClass::Beta, "s1", -1, 0}, even, d1, stage);
        const Sig d2 = step({CoeffName::Gamma, SignalClass::Gamma, "d2", 0, 1}, d1, s1, stage);
        const Sig s2 = step({CoeffName::Delta, SignalClass::Delta, "s2", -1, 0}, s1, d2, stage);
        auto [low, high] = scale(s2, d2, stage);
        return std::move(b_).finish(low, high);
    }

private:
    // Builds `x * c` for the operand node `x` combinationally inside one stage.
    int combinational_product(int x, CoeffName name) {
        const auto label = std::string(to_string(name));
        if (kind_ == DesignKind::BehavioralMultiplier) return b_.mul(x, coeffs_[name], label + ".mul");
        const auto& sched = schedule_[name];
        std::vector<int> nodes{x};
        auto operand = [&](const ScheduleOperand& o) {
            return o.node == kZeroNode ? b_.zero() : b_.shl(nodes[static_cast<std::size_t>(o.node)], o.shift);
        };
        for (std::size_t k = 0; k < sched.ops.size(); ++k) {
            const auto& op = sched.ops[k];
            nodes.push_back(b_.binary(op.subtract ? NodeOp::Sub : NodeOp::Add, operand(op.lhs), operand(op.rhs),
                                      label + ".pp" + std::to_string(k + 1)));
        }
        return operand(sched.result);
    }

    // Pipelined product: one register rank per adder level. `x` is registered
    // and readable at `at` (its index-aligned timing). Returns the result
    // stream and its shift; the last op may instead be registered as `final`.
    struct Product {
        Sig sig;
        int shift = 0;
        int levels = 0;
    };

    Product pipelined_product(const Sig& x, CoeffName name, int first_stage) {
        const auto label = std::string(to_string(name));
        const auto& sched = schedule_[name];
        std::vector<Sig> nodes{x};
        const int base_timing = x.timing;
        for (std::size_t k = 0; k < sched.ops.size(); ++k) {
            const auto& op = sched.ops[k];
            const int at = base_timing + op.level - 1;
            auto operand = [&](const ScheduleOperand& o) {
                return o.node == kZeroNode ? b_.zero()
                                           : b_.shl(b_.tap(nodes[static_cast<std::size_t>(o.node)], 0, at), o.shift);
            };
            const int sum = b_.binary(op.subtract ? NodeOp::Sub : NodeOp::Add, operand(op.lhs), operand(op.rhs),
                                      label + ".pp" + std::to_string(k + 1));
            nodes.push_back(b_.reg(label + ".l" + std::to_string(op.level) + "." + std::to_string(k + 1),
                                   SignalClass::Internal, first_stage + op.level - 1, sum, at));
        }
        const auto& r = sched.result;
        if (r.node == kZeroNode) throw std::logic_error("zero constant in the datapath");
        return {nodes[static_cast<std::size_t>(r.node)], r.shift, sched.depth()};
    }

    Sig step(const StepSpec& spec, const Sig& base, const Sig& nbr, int& stage) {
        const auto label = std::string(to_string(spec.coeff));
        const int at = std::max(nbr.timing + spec.nbr_hi, base.timing);
        if (!is_pipelined(kind_)) {
            const int pre = b_.binary(NodeOp::Add, b_.tap(nbr, spec.nbr_lo, at), b_.tap(nbr, spec.nbr_hi, at),
                                      label + ".pre");
            const int prod = combinational_product(pre, spec.coeff);
            const int sum = b_.binary(NodeOp::Add, b_.tap(base, 0, at), b_.shr8(prod), label + ".final");
            return b_.reg(spec.result_name, spec.result, stage++, sum, at);
        }
        const int pre_at = nbr.timing + spec.nbr_hi;
        const int pre_sum =
            b_.binary(NodeOp::Add, b_.tap(nbr, spec.nbr_lo, pre_at), b_.tap(nbr, spec.nbr_hi, pre_at), label + ".pre");
        const Sig pre = b_.reg(label + ".pre", SignalClass::Internal, stage, pre_sum, pre_at);
        const Product p = pipelined_product(pre, spec.coeff, stage + 1);
        const int final_at = std::max(p.sig.timing, base.timing);
        const int sum = b_.binary(NodeOp::Add, b_.tap(base, 0, final_at),
                                  b_.shr8(b_.shl(b_.tap(p.sig, 0, final_at), p.shift)), label + ".final");
        const Sig out = b_.reg(spec.result_name, spec.result, stage + p.levels + 1, sum, final_at);
        stage += p.levels + 2;
        return out;
    }

    std::pair<Sig, Sig> scale(const Sig& s2, const Sig& d2, int stage) {
        const int at = std::max(s2.timing, d2.timing);
        if (!is_pipelined(kind_)) {
            const Sig pl = b_.reg("inv_k.product", SignalClass::Internal, stage,
                                  combinational_product(b_.tap(s2, 0, at), CoeffName::InvK), at);
            const Sig ph = b_.reg("neg_k.product", SignalClass::Internal, stage,
                                  combinational_product(b_.tap(d2, 0, at), CoeffName::NegK), at);
            const Sig lo = b_.reg("low", SignalClass::Low, stage + 1, b_.shr8(pl.read_node), pl.timing);
            const Sig hi = b_.reg("high", SignalClass::High, stage + 1, b_.shr8(ph.read_node), ph.timing);
            const Sig lo_out = b_.reg("low.out", SignalClass::Low, stage + 2, lo.read_node, lo.timing);
            const Sig hi_out = b_.reg("high.out", SignalClass::High, stage + 2, hi.read_node, hi.timing);
            return {lo_out, hi_out};
        }
        const Sig lo = scaled_output(b_.delayed(s2, at), CoeffName::InvK, SignalClass::Low, "low", stage);
        const Sig hi = scaled_output(b_.delayed(d2, at), CoeffName::NegK, SignalClass::High, "high", stage);
        const int out_timing = std::max(lo.timing, hi.timing);
        return {b_.delayed(lo, out_timing), b_.delayed(hi, out_timing)};
    }

    // Pipelined scaling: the reduction's last adder writes the truncated result
    // straight into the output-class register.
    Sig scaled_output(const Sig& x, CoeffName name, SignalClass cls, const std::string& out_name, int stage) {
        const auto label = std::string(to_string(name));
        const auto& sched = schedule_[name];
        if (sched.ops.empty()) {
            const int v = b_.shr8(b_.shl(b_.tap(x, 0, x.timing), sched.result.shift));
            return b_.reg(out_name, cls, stage, v, x.timing);
        }
        std::vector<Sig> nodes{x};
        Sig last;
        for (std::size_t k = 0; k < sched.ops.size(); ++k) {
            const auto& op = sched.ops[k];
            const int at = x.timing + op.level - 1;
            auto operand = [&](const ScheduleOperand& o) {
                return o.node == kZeroNode ? b_.zero()
                                           : b_.shl(b_.tap(nodes[static_cast<std::size_t>(o.node)], 0, at), o.shift);
            };
            const int sum = b_.binary(op.subtract ? NodeOp::Sub : NodeOp::Add, operand(op.lhs), operand(op.rhs),
                                      label + ".pp" + std::to_string(k + 1));
            const bool is_result = static_cast<int>(k + 1) == sched.result.node;
            if (is_result) {
                last = b_.reg(out_name, cls, stage + op.level - 1, b_.shr8(b_.shl(sum, sched.result.shift)), at);
                nodes.push_back(last);
            } else {
                nodes.push_back(b_.reg(label + ".l" + std::to_string(op.level) + "." + std::to_string(k + 1),
                                       SignalClass::Internal, stage + op.level - 1, sum, at));
            }
        }
        return last;
    }

    DesignKind kind_;
    const CoeffSet& coeffs_;
    const DesignSchedule& schedule_;
    NetBuilder b_;
};

}  // namespace

PipelineModel build_design(DesignKind kind, const CoeffSet& coeffs) {
    return build_design(kind, coeffs, default_schedule(kind, coeffs));
}

PipelineModel build_design(DesignKind kind, const CoeffSet& coeffs, const DesignSchedule& schedule) {
    for (auto name : kAllCoeffNames) {
        const auto& s = schedule[name];
        if (s.plan.constant.scaled_int != coeffs[name].scaled_int)
            throw RangeError("schedule for " + std::string(to_string(name)) + " realizes a different constant");
        for (const std::int64_t x : {std::int64_t{1}, std::int64_t{-1}, std::int64_t{3}})
            if (s.evaluate(x) != x * coeffs[name].scaled_int)
                throw RangeError("schedule for " + std::string(to_string(name)) + " does not compute its product");
        if (is_pipelined(kind))
            for (const auto& op : s.ops)
                if (op.level < 1) throw RangeError("schedule op without a level");
    }
    auto net = std::make_shared<Netlist>(DesignAssembler(kind, coeffs, schedule).build());
    return PipelineModel(std::move(net));
}

// ---------------------------------------------------------------------------
// Simulation

PipelineModel::PipelineModel(std::shared_ptr<const Netlist> netlist) : net_(std::move(netlist)) { reset(); }

void PipelineModel::reset() {
    state_.assign(net_->registers.size(), 0);
    values_.assign(net_->nodes.size(), 0);
    presence_.assign(static_cast<std::size_t>(net_->output_timing + 1), false);
    cycle_ = 0;
    events_.clear();
}

std::vector<RegisterSpec> PipelineModel::registers() const {
    std::vector<RegisterSpec> out;
    out.reserve(net_->registers.size());
    for (const auto& r : net_->registers) out.push_back(r.spec);
    return out;
}

namespace {

// Labels of adders/multipliers in the combinational cone feeding `node`.
void collect_cone(const Netlist& net, int node, std::vector<std::string>& labels, std::set<int>& seen) {
    if (node < 0 || !seen.insert(node).second) return;
    const auto& n = net.nodes[static_cast<std::size_t>(node)];
    if (n.op == NodeOp::Reg || n.op == NodeOp::Input) return;
    if (!n.label.empty()) labels.push_back(n.label);
    collect_cone(net, n.a, labels, seen);
    collect_cone(net, n.b, labels, seen);
}

}  // namespace

std::vector<StageDescription> PipelineModel::stages() const {
    std::vector<StageDescription> out;
    for (int s = 1; s <= net_->stage_count; ++s) out.push_back({s, {}, {}});
    for (const auto& r : net_->registers) {
        const int s = std::clamp(r.spec.stage, 1, net_->stage_count);
        auto& d = out[static_cast<std::size_t>(s - 1)];
        d.registers.push_back(r.spec.name);
        std::set<int> seen;
        std::vector<std::string> labels;
        collect_cone(*net_, r.next, labels, seen);
        std::reverse(labels.begin(), labels.end());
        for (auto& l : labels)
            if (std::find(d.actions.begin(), d.actions.end(), l) == d.actions.end()) d.actions.push_back(std::move(l));
    }
    return out;
}

int PipelineModel::critical_path_adders() const {
    int depth = 0;
    for (const auto& r : net_->registers)
        depth = std::max(depth, net_->nodes[static_cast<std::size_t>(r.next)].adder_depth);
    return depth;
}

std::int64_t PipelineModel::evaluate_adder(const NetNode& n, std::int64_t a, std::int64_t b, int width_a,
                                           int width_b) const {
    if (!is_structural(net_->kind)) return n.op == NodeOp::Add ? a + b : a - b;
    // An operand outside its static width only happens after a recorded
    // overflow; widen it so the gate-level result stays exact.
    const Word wa(a, std::max(width_a, bits_for(a)));
    const Word wb(b, std::max(width_b, bits_for(b)));
    return (n.op == NodeOp::Add ? ripple_add(wa, wb) : ripple_sub(wa, wb)).value();
}

std::optional<OutputPair> PipelineModel::step(std::optional<InputPair> input) {
    const auto ring = static_cast<std::int64_t>(presence_.size());
    std::optional<OutputPair> out;
    if (cycle_ >= net_->output_timing && presence_[static_cast<std::size_t>((cycle_ - net_->output_timing) % ring)])
        out = OutputPair{state_[static_cast<std::size_t>(net_->low_out)], state_[static_cast<std::size_t>(net_->high_out)]};
    presence_[static_cast<std::size_t>(cycle_ % ring)] = input.has_value();

    std::int64_t lanes[2] = {0, 0};
    if (input) {
        if (input->even < -128 || input->even > 127 || input->odd < -128 || input->odd > 127)
            throw RangeError("input pair outside signed 8-bit range at cycle " + std::to_string(cycle_));
        lanes[0] = input->even;
        lanes[1] = input->odd;
    }

    const auto& nodes = net_->nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        std::int64_t v = 0;
        switch (n.op) {
            case NodeOp::Input: v = lanes[n.amount]; break;
            case NodeOp::Reg: v = state_[static_cast<std::size_t>(n.amount)]; break;
            case NodeOp::Zero: v = 0; break;
            case NodeOp::Add:
            case NodeOp::Sub:
                v = evaluate_adder(n, values_[static_cast<std::size_t>(n.a)], values_[static_cast<std::size_t>(n.b)],
                                   nodes[static_cast<std::size_t>(n.a)].width, nodes[static_cast<std::size_t>(n.b)].width);
                break;
            case NodeOp::Shl: v = values_[static_cast<std::size_t>(n.a)] << n.amount; break;
            case NodeOp::Shr8: v = scale_q8(values_[static_cast<std::size_t>(n.a)]); break;
            case NodeOp::Mul: v = values_[static_cast<std::size_t>(n.a)] * n.constant; break;
        }
        values_[i] = v;
    }

    if (trace_) {
        *trace_ << "cycle=" << cycle_;
        if (input)
            *trace_ << "\tin.even=" << input->even << "\tin.odd=" << input->odd;
        else
            *trace_ << "\tin.even=x\tin.odd=x";
        for (std::size_t r = 0; r < net_->registers.size(); ++r)
            *trace_ << '\t' << net_->registers[r].spec.name << '=' << state_[r];
        *trace_ << '\n';
    }

    const auto& regs = net_->registers;
    for (std::size_t r = 0; r < regs.size(); ++r) state_[r] = values_[static_cast<std::size_t>(regs[r].next)];
    for (std::size_t r = 0; r < regs.size(); ++r) {
        if (regs[r].spec.declared_range.contains(state_[r])) continue;
        if (policy_ == OverflowPolicy::Halt) throw OverflowFault(regs[r].spec.name, state_[r], cycle_);
        events_.push_back({cycle_, static_cast<int>(r), state_[r]});
    }
    ++cycle_;
    return out;
}

BandPair<std::int32_t> run_stream(PipelineModel& model, std::span<const std::int32_t> s) {
    require_even_length(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < -128 || s[i] > 127)
            throw RangeError("sample " + std::to_string(i) + " outside signed 8-bit range");
    model.reset();
    const std::size_t half = s.size() / 2;
    const auto pad = static_cast<std::ptrdiff_t>(2 * kLookaheadPairs);
    const std::size_t pairs = half + 2 * kLookaheadPairs;

    BandPair<std::int32_t> out;
    out.low.reserve(half);
    out.high.reserve(half);
    std::size_t emitted = 0;
    auto collect = [&](const std::optional<OutputPair>& o) {
        if (!o) return;
        // Stream index `emitted` is band index emitted - lookahead.
        if (emitted >= static_cast<std::size_t>(kLookaheadPairs) && out.low.size() < half) {
            out.low.push_back(static_cast<std::int32_t>(o->low));
            out.high.push_back(static_cast<std::int32_t>(o->high));
        }
        ++emitted;
    };
    for (std::size_t p = 0; p < pairs; ++p) {
        const auto base = static_cast<std::ptrdiff_t>(2 * p) - pad;
        collect(model.step(InputPair{s[mirror_index(base, s.size())], s[mirror_index(base + 1, s.size())]}));
    }
    // Flush with the continued extension so the tail stays natural data.
    for (std::size_t p = pairs; p < pairs + static_cast<std::size_t>(model.latency()); ++p) {
        const auto base = static_cast<std::ptrdiff_t>(2 * p) - pad;
        collect(model.step(InputPair{s[mirror_index(base, s.size())], s[mirror_index(base + 1, s.size())]}));
    }
    if (out.low.size() != half) throw std::logic_error("pipeline flush did not drain every output");
    return out;
}

std::vector<StageAssignment> stage_schedule(DesignKind kind, const CoeffSet& coeffs) {
    if (!is_pipelined(kind)) throw RangeError("stage_schedule applies to the pipelined designs (3, 5)");
    const auto model = build_design(kind, coeffs);
    std::vector<StageAssignment> out;
    for (const auto& st : model.stages()) {
        StageAssignment a{st.index, {}};
        for (const auto& label : st.actions) a.additions.push_back(label);
        out.push_back(std::move(a));
    }
    return out;
}

int max_additions_per_stage(const PipelineModel& model) {
    const auto& net = model.netlist();
    int worst = 0;
    for (const auto& r : net.registers) {
        const auto& n = net.nodes[static_cast<std::size_t>(r.next)];
        worst = std::max(worst, n.adder_depth);
    }
    return worst;
}

}  // namespace dwt97::rtl
