#include "freqlab/measures.hpp"

#include <algorithm>

namespace freqlab::measures {

HiddenSpace::HiddenSpace(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) fail(Errc::BadConfig, "hidden space must be non-empty");
    auto sorted = atoms_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(Errc::BadConfig, "hidden space atoms must be distinct");
}

std::size_t HiddenSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i] == name) return i;
    }
    fail(Errc::UnknownAtom, "atom '" + name + "'");
}

EventSet EventSet::full(SpacePtr space) {
    EventSet e(std::move(space));
    e.member_.assign(e.member_.size(), true);
    return e;
}

EventSet EventSet::from_mask(SpacePtr space, std::uint64_t mask) {
    if (space->size() > 64) fail(Errc::BadConfig, "mask events limited to 64 atoms");
    EventSet e(std::move(space));
    for (std::size_t i = 0; i < e.member_.size(); ++i) e.member_[i] = (mask >> i) & 1u;
    return e;
}

std::size_t EventSet::count() const {
    return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true));
}

EventSet EventSet::complement() const {
    EventSet e(space_);
    for (std::size_t i = 0; i < member_.size(); ++i) e.member_[i] = !member_[i];
    return e;
}

EventSet EventSet::intersect(const EventSet& other) const {
    require_same_space(other);
    EventSet e(space_);
    for (std::size_t i = 0; i < member_.size(); ++i) e.member_[i] = member_[i] && other.member_[i];
    return e;
}

EventSet EventSet::unite(const EventSet& other) const {
    require_same_space(other);
    EventSet e(space_);
    for (std::size_t i = 0; i < member_.size(); ++i) e.member_[i] = member_[i] || other.member_[i];
    return e;
}

bool EventSet::subset_of(const EventSet& other) const {
    require_same_space(other);
    for (std::size_t i = 0; i < member_.size(); ++i) {
        if (member_[i] && !other.member_[i]) return false;
    }
    return true;
}

std::vector<std::string> EventSet::atom_names() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < member_.size(); ++i) {
        if (member_[i]) out.push_back(space_->atom(i));
    }
    return out;
}

void EventSet::require_same_space(const EventSet& other) const {
    if (!(*space_ == *other.space_)) fail(Errc::SpaceMismatch, "events over different spaces");
}

FiniteMeasure::FiniteMeasure(SpacePtr space, std::vector<Rational> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
    if (mass_.size() != space_->size())
        fail(Errc::SpaceMismatch, "mass vector size must match the space");
    Rational total(0);
    for (const auto& m : mass_) {
        if (m < Rational(0)) fail(Errc::BadConfig, "negative mass");
        total += m;
    }
    if (total != Rational(1)) fail(Errc::BadConfig, "masses must sum to 1, got " + total.to_string());
}

FiniteMeasure FiniteMeasure::uniform(SpacePtr space) {
    const auto n = static_cast<std::int64_t>(space->size());
    return FiniteMeasure(std::move(space), std::vector<Rational>(n, Rational(1, n)));
}

FiniteMeasure FiniteMeasure::point_mass(SpacePtr space, std::size_t atom_index) {
    std::vector<Rational> mass(space->size(), Rational(0));
    mass.at(atom_index) = Rational(1);
    return FiniteMeasure(std::move(space), std::move(mass));
}

FiniteMeasure FiniteMeasure::from_reals(SpacePtr space, const std::vector<double>& mass,
                                        double zero_epsilon) {
    if (mass.size() != space->size())
        fail(Errc::SpaceMismatch, "mass vector size must match the space");
    std::vector<Rational> exact(mass.size(), Rational(0));
    Rational total(0);
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] < 0 && mass[i] < -zero_epsilon) fail(Errc::BadConfig, "negative mass");
        if (mass[i] > zero_epsilon) {
            exact[i] = Rational::from_double_exact(mass[i]);
            total += exact[i];
        }
    }
    if (total.is_zero()) fail(Errc::BadConfig, "all masses vanish");
    for (auto& m : exact) m /= total;
    return FiniteMeasure(std::move(space), std::move(exact));
}

EventSet FiniteMeasure::support() const {
    EventSet e(space_);
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (mass_[i].positive()) e.add(i);
    }
    return e;
}

Rational FiniteMeasure::probability(const EventSet& event) const {
    if (!(event.space() == *space_))
        fail(Errc::UnknownAtom, "event over a different space");
    Rational sum(0);
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (event.contains(i)) sum += mass_[i];
    }
    return sum;
}

Rational event_probability(const FiniteMeasure& p, const EventSet& event) {
    return p.probability(event);
}

namespace {

void require_common_space(const FiniteMeasure& p, const FiniteMeasure& q) {
    if (!(p.space() == q.space())) fail(Errc::SpaceMismatch, "measures over different spaces");
}

}  // namespace

bool is_absolutely_continuous(const FiniteMeasure& p, const FiniteMeasure& q) {
    require_common_space(p, q);
    return p.support().subset_of(q.support());
}

bool is_equivalent(const FiniteMeasure& p, const FiniteMeasure& q) {
    return is_absolutely_continuous(p, q) && is_absolutely_continuous(q, p);
}

SingularityResult is_singular(const FiniteMeasure& p, const FiniteMeasure& q) {
    require_common_space(p, q);
    const EventSet qs = q.support();
    const bool disjoint = p.support().intersect(qs).empty();
    return SingularityResult{disjoint, qs};
}

std::vector<Rational> radon_nikodym(const FiniteMeasure& p, const FiniteMeasure& q) {
    if (!is_absolutely_continuous(p, q))
        fail(Errc::NoDensity, "p is not absolutely continuous with respect to q");
    std::vector<Rational> density(p.space().size(), Rational(0));
    for (std::size_t i = 0; i < density.size(); ++i) {
        if (q.mass(i).positive()) density[i] = p.mass(i) / q.mass(i);
    }
    return density;
}

void ObservableTable::validate(const HiddenSpace& space) const {
    if (setting_id < 1 || setting_id > 4) fail(Errc::BadConfig, "setting id must be 1..4");
    if (values.size() != space.size())
        fail(Errc::SpaceMismatch, "observable table size must match the space");
    for (const auto& triple : values) {
        for (int v : triple) {
            if (v != 1 && v != -1) fail(Errc::BadConfig, "observable values must be +-1");
        }
    }
}

EventSet product_event(SpacePtr space, const ObservableTable& table, int sign) {
    table.validate(*space);
    if (sign != 1 && sign != -1) fail(Errc::BadConfig, "sign must be +-1");
    EventSet e(std::move(space));
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        const auto& [a, b, c] = table.values[i];
        if (a * b * c == sign) e.add(i);
    }
    return e;
}

std::string PhotonValues::name() const {
    std::string s(6, '+');
    for (std::size_t k = 0; k < 6; ++k) s[k] = v[k] == 1 ? '+' : '-';
    return s;
}

PhotonValues PhotonValues::from_bits(unsigned bits) {
    PhotonValues w;
    for (std::size_t k = 0; k < 6; ++k) w.v[k] = (bits >> k) & 1u ? -1 : 1;
    return w;
}

std::array<int, 3> setting_values(const PhotonValues& w, int setting_id) {
    switch (setting_id) {
        case 1: return {w.ay(), w.bx(), w.cx()};
        case 2: return {w.ax(), w.by(), w.cx()};
        case 3: return {w.ax(), w.bx(), w.cy()};
        case 4: return {w.ay(), w.by(), w.cy()};
        default: fail(Errc::BadConfig, "setting id must be 1..4");
    }
}

std::vector<PhotonValues> all_strategies() {
    std::vector<PhotonValues> out;
    out.reserve(64);
    for (unsigned bits = 0; bits < 64; ++bits) out.push_back(PhotonValues::from_bits(bits));
    return out;
}

std::array<ObservableTable, 4> induced_tables(const std::vector<PhotonValues>& assignments) {
    std::array<ObservableTable, 4> tables;
    for (int s = 1; s <= 4; ++s) {
        tables[s - 1].setting_id = s;
        tables[s - 1].values.reserve(assignments.size());
        for (const auto& w : assignments) tables[s - 1].values.push_back(setting_values(w, s));
    }
    return tables;
}

StrategyScheme make_strategy_scheme() {
    StrategyScheme scheme;
    scheme.assignments = all_strategies();
    std::vector<std::string> names;
    names.reserve(scheme.assignments.size());
    for (const auto& w : scheme.assignments) names.push_back(w.name());
    scheme.space = std::make_shared<const HiddenSpace>(std::move(names));
    scheme.tables = induced_tables(scheme.assignments);
    return scheme;
}

IdentityReport pointwise_product_identity(const std::vector<PhotonValues>& assignments) {
    IdentityReport report;
    report.atoms_checked = assignments.size();
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const auto& w = assignments[i];
        int prod = 1;
        for (int s = 1; s <= 3; ++s) {
            const auto t = setting_values(w, s);
            prod *= t[0] * t[1] * t[2];
        }
        const auto t4 = setting_values(w, 4);
        if (prod != t4[0] * t4[1] * t4[2]) report.violations.push_back(i);
    }
    report.holds = report.violations.empty();
    return report;
}

IdentityReport pointwise_product_identity(const std::array<ObservableTable, 4>& tables,
                                          const std::vector<PhotonValues>& assignments) {
    const auto expected = induced_tables(assignments);
    for (int s = 0; s < 4; ++s) {
        if (tables[s].values.size() != assignments.size())
            fail(Errc::StructureViolation, "table size does not match the assignments");
        if (tables[s].values != expected[s].values)
            fail(Errc::StructureViolation,
                 "setting " + std::to_string(s + 1) + " table is not induced by the shared values");
    }
    return pointwise_product_identity(assignments);
}

ContradictionReport kolmogorov_contradiction(const FiniteMeasure& p,
                                             const std::array<ObservableTable, 4>& tables,
                                             const std::vector<PhotonValues>& assignments) {
    // Tables must be induced from shared per-photon values.
    pointwise_product_identity(tables, assignments);

    ContradictionReport report;
    const SpacePtr space = p.space_ptr();
    std::array<EventSet, 3> plus = {EventSet(space), EventSet(space), EventSet(space)};
    for (int s = 0; s < 3; ++s) {
        plus[s] = product_event(space, tables[s], +1);
        report.plus_event_prob[s] = p.probability(plus[s]);
    }
    const EventSet minus4 = product_event(space, tables[3], -1);
    report.minus_event_prob_4 = p.probability(minus4);

    const EventSet sigma = plus[0].intersect(plus[1]).intersect(plus[2]);
    report.sigma_plus_prob = p.probability(sigma);

    report.first_three_certain = report.plus_event_prob[0] == Rational(1) &&
                                 report.plus_event_prob[1] == Rational(1) &&
                                 report.plus_event_prob[2] == Rational(1);
    report.fourth_certain = report.minus_event_prob_4 == Rational(1);
    report.satisfied_by_measure = report.first_three_certain && report.fourth_certain;

    // Pointwise theorem: the joint +1 event avoids setting 4's -1 event, so
    // certainty of the first three forces probability one on an event whose
    // probability the fourth constraint forces to zero.
    report.sigma_inside_plus_4 = sigma.subset_of(minus4.complement());
    report.jointly_satisfiable = !report.sigma_inside_plus_4;
    return report;
}

SingularResolution build_singular_resolution() {
    // Four atoms: each of the first three satisfies its own setting's +1
    // constraint; the fourth flips Ay, which makes the setting-4 product -1
    // and simultaneously pushes the atom outside setting 1's +1 event.
    SingularResolution res;
    res.assignments = {
        PhotonValues{{+1, +1, +1, +1, +1, +1}},
        PhotonValues{{-1, +1, -1, -1, +1, +1}},
        PhotonValues{{-1, +1, +1, -1, +1, -1}},
        PhotonValues{{+1, -1, +1, +1, +1, +1}},
    };
    std::vector<std::string> names;
    names.reserve(4);
    for (std::size_t i = 0; i < res.assignments.size(); ++i)
        names.push_back("w" + std::to_string(i + 1) + ":" + res.assignments[i].name());
    res.space = std::make_shared<const HiddenSpace>(std::move(names));
    res.tables = induced_tables(res.assignments);

    for (std::size_t i = 0; i < 4; ++i)
        res.measures.push_back(FiniteMeasure::point_mass(res.space, i));

    std::array<EventSet, 3> plus = {EventSet(res.space), EventSet(res.space),
                                    EventSet(res.space)};
    for (int s = 0; s < 3; ++s) {
        plus[s] = product_event(res.space, res.tables[s], +1);
        res.plus_prob[s] = res.measures[s].probability(plus[s]);
    }
    res.minus_prob_4 = res.measures[3].probability(product_event(res.space, res.tables[3], -1));
    res.sigma_plus_under_p4 =
        res.measures[3].probability(plus[0].intersect(plus[1]).intersect(plus[2]));

    res.pairwise_singular = true;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j && !is_singular(res.measures[i], res.measures[j]).singular)
                res.pairwise_singular = false;
        }
    }
    return res;
}

}  // namespace freqlab::measures
