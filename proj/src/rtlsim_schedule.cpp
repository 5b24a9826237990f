#include <algorithm>
#include <stdexcept>

#include "dwt97/rtlsim.hpp"

namespace dwt97::rtl {

namespace {

struct Item {
    ScheduleOperand operand;
    bool negative = false;
    int ready = 0;  ///< level after which the value exists
};

// Two disjoint positive term pairs with the same shift spacing can share one
// adder: P = x + (x << d) feeds both as P << a and P << c. Pairs are tried in
// order of spacing, then position; at most one sharing per constant.
std::optional<std::array<int, 4>> find_shared_pair(const ShiftAddPlan& plan) {
    std::vector<int> pos;
    for (int i = 0; i < static_cast<int>(plan.terms.size()); ++i)
        if (plan.terms[static_cast<std::size_t>(i)].sign > 0) pos.push_back(i);

    struct Pair {
        int i, j, diff, first;
    };
    std::vector<Pair> pairs;
    for (std::size_t x = 0; x < pos.size(); ++x)
        for (std::size_t y = x + 1; y < pos.size(); ++y) {
            const int i = pos[x], j = pos[y];
            const int si = plan.terms[static_cast<std::size_t>(i)].shift;
            const int sj = plan.terms[static_cast<std::size_t>(j)].shift;
            pairs.push_back({i, j, sj - si, si});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return a.diff != b.diff ? a.diff < b.diff : a.first < b.first;
    });
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (std::size_t q = p + 1; q < pairs.size(); ++q) {
            const auto& a = pairs[p];
            const auto& b = pairs[q];
            if (a.diff != b.diff) break;
            if (a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j) continue;
            return std::array<int, 4>{a.i, a.j, b.i, b.j};
        }
    return std::nullopt;
}

// Initial operand list: shared pair first (if any), remaining positive terms in
// shift order, the negative sign-bit term last.
std::vector<Item> initial_items(MultiplierSchedule& s) {
    const auto& terms = s.plan.terms;
    std::vector<Item> items;
    std::vector<bool> used(terms.size(), false);
    if (s.shared_terms) {
        const auto [i, j, k, l] = *s.shared_terms;
        (void)l;
        const int si = terms[static_cast<std::size_t>(i)].shift;
        const int sj = terms[static_cast<std::size_t>(j)].shift;
        const int sk = terms[static_cast<std::size_t>(k)].shift;
        s.ops.push_back({{0, 0}, {0, sj - si}, false, 1});
        const int shared = static_cast<int>(s.ops.size());
        items.push_back({{shared, si}, false, 1});
        items.push_back({{shared, sk}, false, 1});
        for (int t : *s.shared_terms) used[static_cast<std::size_t>(t)] = true;
    }
    for (std::size_t t = 0; t < terms.size(); ++t)
        if (!used[t] && terms[t].sign > 0) items.push_back({{0, terms[t].shift}, false, 0});
    for (std::size_t t = 0; t < terms.size(); ++t)
        if (!used[t] && terms[t].sign < 0) items.push_back({{0, terms[t].shift}, true, 0});
    return items;
}

Item combine(MultiplierSchedule& s, const Item& lhs, const Item& rhs, int level) {
    // Only the sign-bit term is negative and it is always ordered last.
    if (lhs.negative) throw std::logic_error("negative partial product on the left of an adder");
    s.ops.push_back({lhs.operand, rhs.operand, rhs.negative, level});
    return {{static_cast<int>(s.ops.size()), 0}, false, level};
}

void finish(MultiplierSchedule& s, std::vector<Item>& items, int level) {
    if (items.empty()) {
        s.result = {kZeroNode, 0};
        return;
    }
    if (items.front().negative) {
        s.ops.push_back({{kZeroNode, 0}, items.front().operand, true, level});
        s.result = {static_cast<int>(s.ops.size()), 0};
        return;
    }
    s.result = items.front().operand;
}

}  // namespace

int MultiplierSchedule::depth() const {
    int d = 0;
    for (const auto& op : ops) d = std::max(d, op.level);
    return d;
}

std::int64_t MultiplierSchedule::evaluate(std::int64_t x) const {
    std::vector<std::int64_t> vals(ops.size() + 1);
    vals[0] = x;
    auto read = [&](const ScheduleOperand& o) -> std::int64_t {
        return o.node == kZeroNode ? 0 : vals[static_cast<std::size_t>(o.node)] << o.shift;
    };
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const auto& op = ops[k];
        vals[k + 1] = op.subtract ? read(op.lhs) - read(op.rhs) : read(op.lhs) + read(op.rhs);
    }
    return read(result);
}

MultiplierSchedule tree_schedule(const ShiftAddPlan& plan) {
    MultiplierSchedule s;
    s.plan = plan;
    s.shared_terms = find_shared_pair(plan);
    std::vector<Item> items = initial_items(s);

    // A shared adder occupies level 1; plain terms are paired alongside it.
    int level = 1;
    while (items.size() > 1) {
        std::vector<Item> ready, waiting;
        for (const auto& it : items) (it.ready < level ? ready : waiting).push_back(it);
        std::stable_partition(ready.begin(), ready.end(), [](const Item& it) { return !it.negative; });
        std::vector<Item> next = waiting;
        std::size_t i = 0;
        for (; i + 1 < ready.size(); i += 2) next.push_back(combine(s, ready[i], ready[i + 1], level));
        if (i < ready.size()) next.push_back(ready[i]);
        // Keep positives ahead of the negative term for the next level.
        std::stable_partition(next.begin(), next.end(), [](const Item& it) { return !it.negative; });
        items = std::move(next);
        ++level;
    }
    finish(s, items, std::max(1, level));
    return s;
}

MultiplierSchedule chain_schedule(const ShiftAddPlan& plan) {
    MultiplierSchedule s;
    s.plan = plan;
    s.shared_terms = find_shared_pair(plan);
    std::vector<Item> items = initial_items(s);
    if (items.size() <= 1) {
        finish(s, items, 1);
        return s;
    }
    Item acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i)
        acc = combine(s, acc, items[i], std::max(acc.ready, items[i].ready) + 1);
    s.result = acc.operand;
    return s;
}

int multiplication_adder_count(CoeffName name, const MultiplierSchedule& schedule) {
    const bool lifting_step = name != CoeffName::NegK && name != CoeffName::InvK;
    return schedule.adder_count() + (lifting_step ? 2 : 0);
}

DesignSchedule default_schedule(DesignKind kind, const CoeffSet& coeffs) {
    DesignSchedule out;
    for (auto name : kAllCoeffNames) {
        const auto plan = shift_add_plan(coeffs[name]);
        out.multipliers[static_cast<std::size_t>(name)] = is_pipelined(kind) ? tree_schedule(plan) : chain_schedule(plan);
    }
    return out;
}

}  // namespace dwt97::rtl
