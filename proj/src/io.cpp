#include "freqlab/io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace freqlab::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

void write_sequence(std::ostream& out, const collectives::Collective& c) {
    for (std::uint64_t i = 0; i < c.size(); ++i) out << c.label_at(i) << '\n';
}

std::vector<std::string> read_sequence(std::istream& in) {
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) labels.push_back(line);
    }
    return labels;
}

collectives::Collective read_collective(std::istream& in) {
    const auto symbols = read_sequence(in);
    std::vector<std::string> order;
    std::map<std::string, bool> seen;
    for (const auto& s : symbols) {
        if (!seen.count(s)) {
            seen[s] = true;
            order.push_back(s);
        }
    }
    return collectives::Collective::from_symbols(collectives::LabelSet(order), symbols);
}

void write_frequency_table_csv(std::ostream& out, const collectives::LabelSet& labels,
                               const collectives::FrequencyTable& table) {
    out << "label,count,frequency\n";
    for (collectives::LabelIndex i = 0; i < labels.size(); ++i) {
        out << labels.label(i) << ',' << table.count(i) << ','
            << (table.total() ? table.frequency(i) : 0.0) << '\n';
    }
}

void write_paired_csv(std::ostream& out, const combining::PairedCollective& z) {
    out << "x_label,y_label\n";
    for (const auto& [a, b] : z.pairs())
        out << z.x_labels().label(a) << ',' << z.y_labels().label(b) << '\n';
}

combining::PairedCollective read_paired_csv(std::istream& in) {
    std::string line;
    std::vector<std::pair<std::string, std::string>> rows;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (header) {
            header = false;
            if (fields.size() == 2 && fields[0] == "x_label") continue;
        }
        if (fields.size() != 2) fail(Errc::BadConfig, "paired CSV row needs two fields: " + line);
        rows.emplace_back(fields[0], fields[1]);
    }
    std::vector<std::string> x_order, y_order;
    std::map<std::string, bool> x_seen, y_seen;
    for (const auto& [x, y] : rows) {
        if (!x_seen.count(x)) {
            x_seen[x] = true;
            x_order.push_back(x);
        }
        if (!y_seen.count(y)) {
            y_seen[y] = true;
            y_order.push_back(y);
        }
    }
    collectives::LabelSet xl(x_order), yl(y_order);
    std::vector<std::pair<collectives::LabelIndex, collectives::LabelIndex>> pairs;
    pairs.reserve(rows.size());
    for (const auto& [x, y] : rows) pairs.emplace_back(xl.index_of(x), yl.index_of(y));
    return combining::PairedCollective(std::move(xl), std::move(yl), std::move(pairs));
}

void write_joint_csv(std::ostream& out, const combining::PairedCollective& z,
                     const combining::JointCounts& counts) {
    out << "a,b,count,p\n";
    for (collectives::LabelIndex a = 0; a < z.x_labels().size(); ++a) {
        for (collectives::LabelIndex b = 0; b < z.y_labels().size(); ++b) {
            out << z.x_labels().label(a) << ',' << z.y_labels().label(b) << ','
                << counts.pair_count(a, b) << ',' << counts.joint_exact(a, b).to_double() << '\n';
        }
    }
}

void write_measure_csv(std::ostream& out, const measures::FiniteMeasure& p) {
    out << "atom_id,mass\n";
    for (std::size_t i = 0; i < p.space().size(); ++i)
        out << p.space().atom(i) << ',' << p.mass(i).to_string() << '\n';
}

measures::FiniteMeasure read_measure_csv(std::istream& in, measures::SpacePtr space) {
    std::vector<Rational> mass(space->size(), Rational(0));
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (header) {
            header = false;
            if (fields.size() == 2 && fields[0] == "atom_id") continue;
        }
        if (fields.size() != 2) fail(Errc::BadConfig, "measure CSV row needs two fields: " + line);
        mass.at(space->index_of(fields[0])) = Rational::parse(fields[1]);
    }
    return measures::FiniteMeasure(std::move(space), std::move(mass));
}

void write_observable_csv(std::ostream& out, const measures::HiddenSpace& space,
                          const std::array<measures::ObservableTable, 4>& tables) {
    out << "atom_id,setting,A,B,C\n";
    for (const auto& table : tables) {
        for (std::size_t i = 0; i < space.size(); ++i) {
            const auto& [a, b, c] = table.values.at(i);
            out << space.atom(i) << ',' << table.setting_id << ',' << a << ',' << b << ',' << c
                << '\n';
        }
    }
}

}  // namespace freqlab::io
