#pragma once

#include <iosfwd>

#include "hierprobe/probes.hpp"

namespace hierprobe {

inline constexpr int kProbeFormatVersion = 1;

/// Writes a header line followed by one line per ternary. Concept text is not
/// stored; it is recomputed with render_concept_text().
void write_probes(std::ostream& out, const ProbeDataset& dataset);

/// Inverse of write_probes(). Throws ProbeFormatError: MalformedRecord (with
/// the 1-based line number) for unparsable lines, PropertyMismatch when a
/// ternary's distances contradict the header's property, DuplicateTernary for
/// a repeated (taxonomy, n, l, r) tuple.
ProbeDataset read_probes(std::istream& in);

}  // namespace hierprobe
