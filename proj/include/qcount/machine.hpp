#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcount/basis.hpp"
#include "qcount/channel.hpp"
#include "qcount/classical.hpp"
#include "qcount/density.hpp"

namespace qcount {

enum class MachineFamily { kIdentity, kBasisPermutation, kSeededRandomUnitary, kDephasingCompose };

std::string to_string(MachineFamily family);
/// Accepts "identity", "basis-permutation", "seeded-random-unitary",
/// "dephasing-compose". Throws DomainError otherwise.
MachineFamily parse_family(std::string_view name);

/// Construction parameters of a toy quantum machine. Inputs are qubit strings
/// of base length <= n; outputs live on strings of length <= out_n (defaults to n).
struct MachineSpec {
  MachineFamily family = MachineFamily::kIdentity;
  int n = 1;
  std::uint64_t seed = 0;
  /// Ancilla qubits for seeded-random-unitary. For dephasing-compose the
  /// minimum needed is filled in when 0; a smaller nonzero value is rejected.
  int ancilla_count = 0;
  /// Output length bound; -1 means n.
  int out_n = -1;
  /// dephasing-compose only: weight of the maximally mixed output. 0 gives
  /// complete dephasing after a seeded unitary, 1 gives I/dim.
  double mix = 0.0;

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

/// Fixed-circuit machine: sigma -> Tr_anc[V (sigma (x) |0..0><0..0|) V^dagger]
/// with V a unitary on register (x) ancilla. The register holds strings of
/// length <= out_n; inputs occupy its first 2^(n+1) - 1 basis states.
class QuantumMachine {
 public:
  static constexpr int kMaxLength = 4;
  static constexpr std::size_t kMaxJointDim = 1024;

  const MachineSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  int out_n() const { return spec_.out_n; }
  int ancilla_count() const { return spec_.ancilla_count; }
  StringBasis input_basis() const { return StringBasis(spec_.n); }
  StringBasis output_basis() const { return StringBasis(spec_.out_n); }

  /// The joint unitary V; row/column index is register_index * 2^ancilla + ancilla_index.
  const Matrix& circuit() const { return circuit_; }
  /// The induced CPTP map from input strings to output strings.
  const Channel& channel() const { return channel_; }
  /// For basis-permutation machines: pi(register index).
  const std::vector<std::size_t>& permutation() const { return permutation_; }

 private:
  friend QuantumMachine make_machine(const MachineSpec&);
  friend QuantumMachine make_permutation_machine(int, std::vector<std::size_t>, std::uint64_t, int);
  QuantumMachine(MachineSpec spec, Matrix circuit, std::vector<std::size_t> permutation);

  MachineSpec spec_;
  Matrix circuit_;
  std::vector<std::size_t> permutation_;
  Channel channel_;
};

/// Builds a machine deterministically from its spec. Throws DomainError for
/// n outside [0, 4], out_n < n, a joint space above kMaxJointDim, or invalid
/// family parameters.
QuantumMachine make_machine(const MachineSpec& spec);

/// basis-permutation machine with an explicit permutation of the strings of
/// length <= out_n (-1 means n); the recorded seed is informational.
QuantumMachine make_permutation_machine(int n, std::vector<std::size_t> permutation,
                                        std::uint64_t seed = 0, int out_n = -1);

/// Permutation machine that sends each input string p (a program) to
/// run_classical(p) whenever that output has length <= out_n and is not
/// already taken by an earlier program in string order; the remaining
/// strings are matched up in increasing order.
QuantumMachine make_classical_mirror(int n, int out_n, const ClassicalMachine& classical = {});

/// Runs the machine on sigma. Sigma may be expanded in any string basis; it is
/// re-expressed on the input basis. Throws DomainError if base_length(sigma) > n.
DensityOperator run(const QuantumMachine& machine, const DensityOperator& sigma);

}  // namespace qcount
