#include "grabin/product.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <unordered_map>

namespace grabin {

NormalizedSpec::NormalizedSpec(std::vector<std::string> inputs, std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), aps_([&] {
          std::vector<std::string> all = inputs_;
          all.insert(all.end(), outputs_.begin(), outputs_.end());
          return ApTable(std::move(all));
      }())
{
}

NormalizedSpec NormalizedSpec::from_conjuncts(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                              const std::vector<ClassifiedConjunct>& conjuncts)
{
    NormalizedSpec spec(std::move(inputs), std::move(outputs));
    for (const auto& c : conjuncts)
        spec.add(c);
    return spec;
}

void NormalizedSpec::add(const ClassifiedConjunct& conjunct)
{
    const Automaton& aut = conjunct.automaton;
    if (aut.num_aps() != aps_.size())
        throw Error("conjunct automaton is not over the specification's proposition table");
    ensure_valid(aut);
    const bool buchi = conjunct.kind == ConjunctKind::Buchi;
    if (buchi != std::holds_alternative<acc::Buchi>(aut.acceptance()) ||
        (!buchi && !std::holds_alternative<acc::CoBuchi>(aut.acceptance())))
        throw WrongAcceptanceKind("conjunct kind does not match its acceptance condition");
    if (conjunct.role == Role::Assumption)
        (buchi ? a_ : b_).push_back(aut);
    else
        (buchi ? c_ : d_).push_back(aut);
}

std::vector<const Automaton*> NormalizedSpec::components() const
{
    std::vector<const Automaton*> out;
    for (const auto* family : {&a_, &b_, &c_, &d_})
        for (const auto& aut : *family)
            out.push_back(&aut);
    return out;
}

ControlState control_successor(ControlState current, std::span<const bool> a_accepting,
                               std::span<const bool> c_accepting, std::span<const bool> d_rejecting)
{
    const auto n1 = static_cast<unsigned>(a_accepting.size());
    const auto n3 = static_cast<unsigned>(c_accepting.size());
    ControlState next = current;
    if (current.w == 0 || a_accepting[current.w - 1])
        next.w = (current.w + 1) % (n1 + 1);
    if (current.r == 0 || c_accepting[current.r - 1])
        next.r = (current.r + 1) % (n3 + 1);
    const bool d_violation = std::any_of(d_rejecting.begin(), d_rejecting.end(), [](bool b) { return b; });
    next.v = next.w == 0 || (current.v && !d_violation);
    return next;
}

namespace {

bool in_set(const Acceptance& acceptance, unsigned state)
{
    if (const auto* b = std::get_if<acc::Buchi>(&acceptance))
        return contains(b->accepting, state);
    if (const auto* c = std::get_if<acc::CoBuchi>(&acceptance))
        return contains(c->rejecting, state);
    throw WrongAcceptanceKind("product components must be Buchi or co-Buchi");
}

// Per-component membership masks in A, B, C, D order.
std::vector<std::vector<char>> membership_masks(const NormalizedSpec& spec)
{
    std::vector<std::vector<char>> masks;
    for (const Automaton* aut : spec.components()) {
        std::vector<char> mask(aut->num_states(), 0);
        for (unsigned s = 0; s < aut->num_states(); ++s)
            mask[s] = in_set(aut->acceptance(), s) ? 1 : 0;
        masks.push_back(std::move(mask));
    }
    return masks;
}

unsigned colour_from_flags(ControlState control, bool b_rejecting, bool d_rejecting)
{
    if (b_rejecting)
        return 4;
    if (control.v && d_rejecting)
        return 3;
    if (control.r == 0)
        return 2;
    if (control.w == 0)
        return 1;
    return 0;
}

}  // namespace

unsigned colour_of(const ProductState& state, const NormalizedSpec& spec)
{
    const std::size_t n1 = spec.buchi_assumptions().size();
    const std::size_t n2 = spec.cobuchi_assumptions().size();
    const std::size_t n3 = spec.buchi_guarantees().size();
    const std::size_t n4 = spec.cobuchi_guarantees().size();
    if (state.components.size() != n1 + n2 + n3 + n4)
        throw Error("product state has the wrong number of components");
    bool b_rejecting = false;
    for (std::size_t i = 0; i < n2; ++i)
        b_rejecting |= in_set(spec.cobuchi_assumptions()[i].acceptance(), state.components[n1 + i]);
    bool d_rejecting = false;
    for (std::size_t i = 0; i < n4; ++i)
        d_rejecting |= in_set(spec.cobuchi_guarantees()[i].acceptance(), state.components[n1 + n2 + n3 + i]);
    return colour_from_flags(state.control, b_rejecting, d_rejecting);
}

std::uint64_t raw_state_bound(const NormalizedSpec& spec)
{
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t bound = 1;
    auto mul = [&](std::uint64_t f) {
        if (f != 0 && bound > kMax / f)
            bound = kMax;
        else
            bound *= f;
    };
    for (const Automaton* aut : spec.components())
        mul(aut->num_states());
    mul(spec.buchi_assumptions().size() + 1);
    mul(spec.buchi_guarantees().size() + 1);
    mul(2);
    return bound;
}

ParityAutomaton build_product(const NormalizedSpec& spec, const ProductOptions& options)
{
    const std::uint64_t bound = raw_state_bound(spec);
    if (bound > options.max_raw_states)
        throw CapacityExceeded("product state space bound " + std::to_string(bound) + " exceeds the limit of " +
                               std::to_string(options.max_raw_states));

    const auto comps = spec.components();
    const auto masks = membership_masks(spec);
    const std::size_t n1 = spec.buchi_assumptions().size();
    const std::size_t n2 = spec.cobuchi_assumptions().size();
    const std::size_t n3 = spec.buchi_guarantees().size();
    const std::size_t n4 = spec.cobuchi_guarantees().size();
    const std::size_t k = comps.size();

    ParityAutomaton pa;
    pa.num_aps_ = static_cast<unsigned>(spec.aps().size());
    pa.num_letters_ = spec.aps().num_letters();
    pa.raw_bound_ = bound;

    // Mixed-radix key over the raw state space; fits because bound <= max_raw_states.
    auto key_of = [&](const ProductState& s) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < k; ++i)
            key = key * comps[i]->num_states() + s.components[i];
        key = key * (n1 + 1) + s.control.w;
        key = key * (n3 + 1) + s.control.r;
        key = key * 2 + (s.control.v ? 1 : 0);
        return key;
    };

    std::unordered_map<std::uint64_t, std::uint32_t> index;
    auto intern = [&](ProductState s) -> std::uint32_t {
        auto [it, inserted] = index.try_emplace(key_of(s), static_cast<std::uint32_t>(pa.states_.size()));
        if (inserted)
            pa.states_.push_back(std::move(s));
        return it->second;
    };

    ProductState init;
    for (const Automaton* aut : comps)
        init.components.push_back(aut->initial());
    init.control = ControlState{0, 0, false};
    intern(std::move(init));

    // Flag buffers for control_successor; std::vector<bool> cannot back a span.
    std::unique_ptr<bool[]> a_acc(new bool[n1 + 1]);
    std::unique_ptr<bool[]> c_acc(new bool[n3 + 1]);
    std::unique_ptr<bool[]> d_rej(new bool[n4 + 1]);
    std::vector<std::uint32_t> row(pa.num_letters_);
    for (std::size_t cur = 0; cur < pa.states_.size(); ++cur) {
        // Copy: interning may reallocate states_.
        const ProductState source = pa.states_[cur];
        bool b_rej_any = false;
        bool d_rej_any = false;
        for (std::size_t i = 0; i < n1; ++i)
            a_acc[i] = masks[i][source.components[i]] != 0;
        for (std::size_t i = 0; i < n2; ++i)
            b_rej_any |= masks[n1 + i][source.components[n1 + i]] != 0;
        for (std::size_t i = 0; i < n3; ++i)
            c_acc[i] = masks[n1 + n2 + i][source.components[n1 + n2 + i]] != 0;
        for (std::size_t i = 0; i < n4; ++i) {
            d_rej[i] = masks[n1 + n2 + n3 + i][source.components[n1 + n2 + n3 + i]] != 0;
            d_rej_any |= d_rej[i];
        }
        pa.colours_.push_back(colour_from_flags(source.control, b_rej_any, d_rej_any));
        const ControlState control =
            control_successor(source.control, {a_acc.get(), n1}, {c_acc.get(), n3}, {d_rej.get(), n4});

        ProductState target;
        target.control = control;
        target.components.resize(k);
        for (Letter x = 0; x < pa.num_letters_; ++x) {
            for (std::size_t i = 0; i < k; ++i)
                target.components[i] = comps[i]->step(source.components[i], x);
            row[x] = intern(target);
        }
        pa.next_.insert(pa.next_.end(), row.begin(), row.end());
    }
    return pa;
}

Automaton ParityAutomaton::to_automaton() const
{
    return Automaton::from_table(num_aps_, 0, next_, acc::Parity{colours_, 5});
}

bool ParityAutomaton::accepts(const Lasso& lasso) const
{
    StateSet inf = infinity_set(0, [&](unsigned s, Letter x) { return step(s, x); }, lasso);
    unsigned best = 0;
    for (unsigned s : inf)
        best = std::max(best, colours_[s]);
    return best % 2 == 0;
}

}  // namespace grabin
