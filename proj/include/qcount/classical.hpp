#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace qcount {

/// A tiny register machine whose programs are bit strings. Each instruction
/// starts with a 3-bit opcode:
///
///   000            halt
///   001            append 0 to the output
///   010            append 1 to the output
///   011 aaa        jump to instruction aaa
///   100 aaa bbbb   jump to instruction aaa if the output is shorter than bbbb
///   101, 110, 111  invalid
///
/// A program is valid only if it decodes into whole instructions with valid
/// opcodes; invalid programs yield no output. A valid run yields no output
/// when it jumps or falls past the last instruction or exceeds the step limit.
struct ClassicalMachine {
  int step_limit = 256;
  int max_program_bits = 20;
};

/// Output of `program` ('0'/'1' characters), or nullopt. Throws DomainError
/// for programs longer than max_program_bits or containing non-binary characters.
std::optional<std::string> run_classical(std::string_view program,
                                         const ClassicalMachine& machine = {});

/// Shortest program length producing x among all programs of length <= lmax
/// (lmax <= 20), or nullopt.
std::optional<int> classical_complexity(std::string_view x, int lmax,
                                        const ClassicalMachine& machine = {});

/// Shortest program length for every output reachable with programs of length <= lmax.
std::map<std::string, int> complexity_table(int lmax, const ClassicalMachine& machine = {});

/// Shortest program (length, then lexicographic) producing x, or nullopt.
std::optional<std::string> shortest_program(std::string_view x, int lmax,
                                            const ClassicalMachine& machine = {});

/// Hex encoding of a bit string, left-aligned and zero-padded to whole nibbles.
/// The bit length must be stored alongside.
std::string bits_to_hex(std::string_view bits);
/// Inverse of bits_to_hex. Throws FormatError on bad digits or a length that
/// does not fit the digits.
std::string hex_to_bits(std::string_view hex, std::size_t bit_length);

}  // namespace qcount
