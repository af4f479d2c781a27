#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "freqlab/collectives.hpp"
#include "freqlab/combining.hpp"
#include "freqlab/measures.hpp"

namespace freqlab::io {

// Sequences: one label per line, UTF-8 plain text.
void write_sequence(std::ostream& out, const collectives::Collective& c);
std::vector<std::string> read_sequence(std::istream& in);
collectives::Collective read_collective(std::istream& in);  // label set inferred, order of first appearance

// Frequency tables: CSV label,count,frequency.
void write_frequency_table_csv(std::ostream& out, const collectives::LabelSet& labels,
                               const collectives::FrequencyTable& table);

// Paired sequences: CSV x_label,y_label.
void write_paired_csv(std::ostream& out, const combining::PairedCollective& z);
combining::PairedCollective read_paired_csv(std::istream& in);

// Joint tables: CSV a,b,count,p.
void write_joint_csv(std::ostream& out, const combining::PairedCollective& z,
                     const combining::JointCounts& counts);

// Measures: CSV atom_id,mass with exact rational masses ("3/16", "1", "0.25" on input).
void write_measure_csv(std::ostream& out, const measures::FiniteMeasure& p);
measures::FiniteMeasure read_measure_csv(std::istream& in, measures::SpacePtr space);

// Observable tables: CSV atom_id,setting,A,B,C.
void write_observable_csv(std::ostream& out, const measures::HiddenSpace& space,
                          const std::array<measures::ObservableTable, 4>& tables);

}  // namespace freqlab::io
