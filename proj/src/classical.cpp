#include "qcount/classical.hpp"

#include <cstdint>
#include <vector>

#include "qcount/errors.hpp"

namespace qcount {

namespace {

enum class Op : std::uint8_t { kHalt, kWrite0, kWrite1, kJump, kJumpIfShorter };

struct Instruction {
  Op op;
  int target = 0;
  int bound = 0;
};

constexpr int kOpcodeBits = 3;
constexpr int kAddressBits = 3;
constexpr int kBoundBits = 4;

int read_field(std::string_view bits, std::size_t& pos, int width) {
  int v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | (bits[pos++] == '1');
  return v;
}

std::optional<std::vector<Instruction>> decode(std::string_view bits) {
  std::vector<Instruction> prog;
  std::size_t pos = 0;
  while (pos < bits.size()) {
    if (bits.size() - pos < kOpcodeBits) return std::nullopt;
    const int opcode = read_field(bits, pos, kOpcodeBits);
    switch (opcode) {
      case 0: prog.push_back({Op::kHalt}); break;
      case 1: prog.push_back({Op::kWrite0}); break;
      case 2: prog.push_back({Op::kWrite1}); break;
      case 3:
        if (bits.size() - pos < kAddressBits) return std::nullopt;
        prog.push_back({Op::kJump, read_field(bits, pos, kAddressBits)});
        break;
      case 4: {
        if (bits.size() - pos < kAddressBits + kBoundBits) return std::nullopt;
        const int target = read_field(bits, pos, kAddressBits);
        prog.push_back({Op::kJumpIfShorter, target, read_field(bits, pos, kBoundBits)});
        break;
      }
      default: return std::nullopt;
    }
  }
  if (prog.empty()) return std::nullopt;
  return prog;
}

void check_program(std::string_view program, const ClassicalMachine& machine) {
  if (static_cast<int>(program.size()) > machine.max_program_bits) {
    throw DomainError("program of " + std::to_string(program.size()) + " bits exceeds limit of " +
                      std::to_string(machine.max_program_bits));
  }
  for (char c : program) {
    if (c != '0' && c != '1') throw DomainError("program must be a binary string");
  }
}

std::optional<std::string> execute(const std::vector<Instruction>& prog, int step_limit) {
  std::string out;
  std::size_t pc = 0;
  for (int step = 0; step < step_limit; ++step) {
    if (pc >= prog.size()) return std::nullopt;
    const Instruction& ins = prog[pc];
    switch (ins.op) {
      case Op::kHalt: return out;
      case Op::kWrite0: out.push_back('0'); ++pc; break;
      case Op::kWrite1: out.push_back('1'); ++pc; break;
      case Op::kJump: pc = static_cast<std::size_t>(ins.target); break;
      case Op::kJumpIfShorter:
        pc = static_cast<int>(out.size()) < ins.bound ? static_cast<std::size_t>(ins.target) : pc + 1;
        break;
    }
  }
  return std::nullopt;
}

// Calls visit(program, output) for every halting program of length <= lmax,
// ordered by length then lexicographically. visit returns false to stop.
template <typename Visit>
void for_each_program(int lmax, const ClassicalMachine& machine, Visit&& visit) {
  if (lmax < 0 || lmax > 20) throw DomainError("lmax must lie in [0, 20]");
  std::string bits;
  for (int len = 1; len <= lmax; ++len) {
    bits.assign(static_cast<std::size_t>(len), '0');
    const std::uint32_t count = std::uint32_t{1} << len;
    for (std::uint32_t v = 0; v < count; ++v) {
      for (int i = 0; i < len; ++i) bits[static_cast<std::size_t>(i)] = ((v >> (len - 1 - i)) & 1) ? '1' : '0';
      const auto prog = decode(bits);
      if (!prog) continue;
      const auto out = execute(*prog, machine.step_limit);
      if (out && !visit(bits, *out)) return;
    }
  }
}

}  // namespace

std::optional<std::string> run_classical(std::string_view program, const ClassicalMachine& machine) {
  check_program(program, machine);
  const auto prog = decode(program);
  if (!prog) return std::nullopt;
  return execute(*prog, machine.step_limit);
}

std::optional<std::string> shortest_program(std::string_view x, int lmax,
                                            const ClassicalMachine& machine) {
  std::optional<std::string> found;
  for_each_program(lmax, machine, [&](const std::string& p, const std::string& out) {
    if (out != x) return true;
    found = p;
    return false;
  });
  return found;
}

std::optional<int> classical_complexity(std::string_view x, int lmax, const ClassicalMachine& machine) {
  const auto p = shortest_program(x, lmax, machine);
  if (!p) return std::nullopt;
  return static_cast<int>(p->size());
}

std::map<std::string, int> complexity_table(int lmax, const ClassicalMachine& machine) {
  std::map<std::string, int> table;
  for_each_program(lmax, machine, [&](const std::string& p, const std::string& out) {
    table.try_emplace(out, static_cast<int>(p.size()));
    return true;
  });
  return table;
}

std::string bits_to_hex(std::string_view bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < bits.size()) {
        if (bits[i + j] != '0' && bits[i + j] != '1') throw FormatError("non-binary character");
        nibble |= bits[i + j] == '1';
      }
    }
    hex.push_back(kDigits[nibble]);
  }
  return hex;
}

std::string hex_to_bits(std::string_view hex, std::size_t bit_length) {
  if (hex.size() != (bit_length + 3) / 4) throw FormatError("hex length does not match bit length");
  std::string bits;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw FormatError("invalid hex digit");
    for (int b = 3; b >= 0; --b) bits.push_back(((v >> b) & 1) ? '1' : '0');
  }
  for (std::size_t i = bit_length; i < bits.size(); ++i) {
    if (bits[i] != '0') throw FormatError("nonzero padding bits");
  }
  bits.resize(bit_length);
  return bits;
}

}  // namespace qcount
