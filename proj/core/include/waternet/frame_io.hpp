#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace waternet {

using Vec3 = std::array<double, 3>;

/// One coordinate snapshot in a rectangular periodic box. Lengths in nm.
struct Frame {
  std::vector<Vec3> positions;
  Vec3 box{0.0, 0.0, 0.0};
  std::vector<std::string> labels;
  /// Index of each particle in the file it was read from. select_species
  /// keeps these so graph nodes can be mapped back to original atoms.
  std::vector<std::size_t> particle_index;
  std::string source_id;

  std::size_t size() const noexcept { return positions.size(); }

  /// Throws ParseError if any Frame invariant is violated.
  void validate() const;
};

/// Reads a GROMACS .gro snapshot (fixed-width columns, rectangular box only).
Frame parse_gro(std::string_view text);

/// Reads {"box":[Lx,Ly,Lz],"positions":[[x,y,z],...],"labels":[...]}.
/// Missing "labels" default to "OW".
Frame parse_frame_json(std::string_view text);

/// Reads either a single frame object or an array of frame objects.
std::vector<Frame> parse_frame_json_list(std::string_view text);

/// Inverse of parse_frame_json. Doubles are written with round-trip precision.
std::string to_frame_json(const Frame& frame);

/// Keeps only particles whose label equals `name`, preserving order.
Frame select_species(const Frame& frame, std::string_view name);

}  // namespace waternet
