#include "qcount/machine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "qcount/errors.hpp"
#include "qcount/random.hpp"

namespace qcount {

namespace {

std::size_t ancilla_dim(int count) { return std::size_t{1} << count; }

// Kraus operators of the induced map: K_m[t, s] = V[t*A + m, s*A] for inputs s.
Channel induced_channel(const Matrix& v, std::size_t in_dim, std::size_t reg_dim, int ancillas) {
  const std::size_t a = ancilla_dim(ancillas);
  std::vector<Matrix> kraus;
  kraus.reserve(a);
  for (std::size_t m = 0; m < a; ++m) {
    Matrix k(static_cast<Eigen::Index>(reg_dim), static_cast<Eigen::Index>(in_dim));
    for (std::size_t t = 0; t < reg_dim; ++t) {
      for (std::size_t s = 0; s < in_dim; ++s) {
        k(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) =
            v(static_cast<Eigen::Index>(t * a + m), static_cast<Eigen::Index>(s * a));
      }
    }
    if (k.norm() > 1e-14) kraus.push_back(std::move(k));
  }
  return Channel::make(std::move(kraus));
}

// Unitary whose ancilla-|0> columns are the isometry `w` (rows indexed
// register * A + ancilla, one column per register state); the remaining
// columns are an orthonormal completion taken from a Householder QR of w.
Matrix complete_isometry(const Matrix& w, std::size_t reg_dim, int ancillas) {
  const std::size_t a = ancilla_dim(ancillas);
  const auto joint = static_cast<Eigen::Index>(reg_dim * a);
  Eigen::HouseholderQR<Matrix> qr(w);
  const Matrix q = qr.householderQ();
  Matrix v(joint, joint);
  Eigen::Index spare = static_cast<Eigen::Index>(reg_dim);
  for (std::size_t col = 0; col < reg_dim * a; ++col) {
    if (col % a == 0) {
      v.col(static_cast<Eigen::Index>(col)) = w.col(static_cast<Eigen::Index>(col / a));
    } else {
      v.col(static_cast<Eigen::Index>(col)) = q.col(spare++);
    }
  }
  return v;
}

int ancillas_for(std::size_t kraus_count) {
  return static_cast<int>(std::bit_width(kraus_count - 1));
}

}  // namespace

std::string to_string(MachineFamily family) {
  switch (family) {
    case MachineFamily::kIdentity: return "identity";
    case MachineFamily::kBasisPermutation: return "basis-permutation";
    case MachineFamily::kSeededRandomUnitary: return "seeded-random-unitary";
    case MachineFamily::kDephasingCompose: return "dephasing-compose";
  }
  return "unknown";
}

MachineFamily parse_family(std::string_view name) {
  if (name == "identity") return MachineFamily::kIdentity;
  if (name == "basis-permutation") return MachineFamily::kBasisPermutation;
  if (name == "seeded-random-unitary") return MachineFamily::kSeededRandomUnitary;
  if (name == "dephasing-compose") return MachineFamily::kDephasingCompose;
  throw DomainError("unknown machine family '" + std::string(name) + "'");
}

QuantumMachine::QuantumMachine(MachineSpec spec, Matrix circuit, std::vector<std::size_t> permutation)
    : spec_(spec),
      circuit_(std::move(circuit)),
      permutation_(std::move(permutation)),
      channel_(induced_channel(circuit_, StringBasis::dim_for(spec.n),
                               StringBasis::dim_for(spec.out_n), spec.ancilla_count)
                   .with_bases(StringBasis(spec.n), StringBasis(spec.out_n))) {}

QuantumMachine make_machine(const MachineSpec& requested) {
  MachineSpec spec = requested;
  if (spec.n < 0 || spec.n > QuantumMachine::kMaxLength) {
    throw DomainError("machine input bound n must lie in [0, 4], got " + std::to_string(spec.n));
  }
  if (spec.out_n < 0) spec.out_n = spec.n;
  if (spec.out_n < spec.n || spec.out_n > QuantumMachine::kMaxLength) {
    throw DomainError("output bound must lie in [n, 4]");
  }
  if (spec.ancilla_count < 0) throw DomainError("ancilla count must be non-negative");
  const std::size_t reg = StringBasis::dim_for(spec.out_n);
  const auto r = static_cast<Eigen::Index>(reg);
  Rng rng(derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.family),
                                  static_cast<std::uint64_t>(spec.n),
                                  static_cast<std::uint64_t>(spec.out_n)}));

  auto check_joint = [&] {
    if (reg * ancilla_dim(spec.ancilla_count) > QuantumMachine::kMaxJointDim) {
      throw DomainError("joint register/ancilla dimension exceeds " +
                        std::to_string(QuantumMachine::kMaxJointDim) + "; reduce n or ancillas");
    }
  };

  switch (spec.family) {
    case MachineFamily::kIdentity: {
      check_joint();
      const auto joint = static_cast<Eigen::Index>(reg * ancilla_dim(spec.ancilla_count));
      return QuantumMachine(spec, Matrix::Identity(joint, joint), {});
    }
    case MachineFamily::kBasisPermutation: {
      if (spec.ancilla_count != 0) throw DomainError("basis-permutation machines use no ancillas");
      std::vector<std::size_t> perm(reg);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      // Fisher-Yates with explicit draws, independent of std::shuffle's algorithm.
      for (std::size_t i = reg; i > 1; --i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        std::swap(perm[i - 1], perm[j]);
      }
      return make_permutation_machine(spec.n, std::move(perm), spec.seed, spec.out_n);
    }
    case MachineFamily::kSeededRandomUnitary: {
      check_joint();
      return QuantumMachine(spec, haar_unitary(reg * ancilla_dim(spec.ancilla_count), rng), {});
    }
    case MachineFamily::kDephasingCompose: {
      if (!(spec.mix >= 0.0 && spec.mix <= 1.0)) throw DomainError("mix must lie in [0, 1]");
      const Matrix u = haar_unitary(reg, rng);
      std::vector<Matrix> kraus;
      if (spec.mix < 1.0) {
        for (Eigen::Index s = 0; s < r; ++s) {
          Matrix k = Matrix::Zero(r, r);
          k.row(s) = std::sqrt(1.0 - spec.mix) * u.row(s);
          kraus.push_back(std::move(k));
        }
      }
      if (spec.mix > 0.0) {
        const double w = std::sqrt(spec.mix / static_cast<double>(reg));
        for (Eigen::Index t = 0; t < r; ++t) {
          for (Eigen::Index s = 0; s < r; ++s) {
            Matrix k = Matrix::Zero(r, r);
            k.row(t) = w * u.row(s);
            kraus.push_back(std::move(k));
          }
        }
      }
      const int needed = ancillas_for(kraus.size());
      if (spec.ancilla_count == 0) spec.ancilla_count = needed;
      if (spec.ancilla_count < needed) {
        throw DomainError("dephasing-compose needs at least " + std::to_string(needed) +
                          " ancilla qubits");
      }
      check_joint();
      const std::size_t a = ancilla_dim(spec.ancilla_count);
      Matrix w = Matrix::Zero(static_cast<Eigen::Index>(reg * a), r);
      for (std::size_t m = 0; m < kraus.size(); ++m) {
        for (std::size_t t = 0; t < reg; ++t) {
          w.row(static_cast<Eigen::Index>(t * a + m)) = kraus[m].row(static_cast<Eigen::Index>(t));
        }
      }
      return QuantumMachine(spec, complete_isometry(w, reg, spec.ancilla_count), {});
    }
  }
  throw DomainError("unknown machine family");
}

QuantumMachine make_permutation_machine(int n, std::vector<std::size_t> permutation,
                                        std::uint64_t seed, int out_n) {
  if (n < 0 || n > QuantumMachine::kMaxLength) throw DomainError("machine input bound out of range");
  if (out_n < 0) out_n = n;
  if (out_n < n || out_n > QuantumMachine::kMaxLength) throw DomainError("output bound must lie in [n, 4]");
  const std::size_t reg = StringBasis::dim_for(out_n);
  if (permutation.size() != reg) throw DimensionError("permutation must cover every string");
  std::vector<bool> seen(reg, false);
  for (auto p : permutation) {
    if (p >= reg || seen[p]) throw DomainError("not a permutation");
    seen[p] = true;
  }
  const auto r = static_cast<Eigen::Index>(reg);
  Matrix v = Matrix::Zero(r, r);
  for (std::size_t s = 0; s < reg; ++s) v(static_cast<Eigen::Index>(permutation[s]), static_cast<Eigen::Index>(s)) = 1.0;
  MachineSpec spec{MachineFamily::kBasisPermutation, n, seed, 0, out_n, 0.0};
  return QuantumMachine(spec, std::move(v), std::move(permutation));
}

QuantumMachine make_classical_mirror(int n, int out_n, const ClassicalMachine& classical) {
  if (out_n < 0) out_n = n;
  if (n < 0 || out_n < n || out_n > QuantumMachine::kMaxLength) {
    throw DomainError("classical mirror needs 0 <= n <= out_n <= 4");
  }
  const StringBasis reg_basis(out_n);
  const std::size_t reg = reg_basis.dim();
  const std::size_t inputs = StringBasis::dim_for(n);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> perm(reg, kUnset);
  std::vector<bool> taken(reg, false);
  for (std::size_t s = 0; s < inputs; ++s) {
    const std::string program = reg_basis.string_at(s);
    if (static_cast<int>(program.size()) > classical.max_program_bits) continue;
    const auto out = run_classical(program, classical);
    if (!out || static_cast<int>(out->size()) > out_n) continue;
    const std::size_t target = reg_basis.index_of(*out);
    if (taken[target]) continue;
    perm[s] = target;
    taken[target] = true;
  }
  std::size_t next = 0;
  for (std::size_t s = 0; s < reg; ++s) {
    if (perm[s] != kUnset) continue;
    while (taken[next]) ++next;
    perm[s] = next;
    taken[next] = true;
  }
  return make_permutation_machine(n, std::move(perm), 0, out_n);
}

DensityOperator run(const QuantumMachine& machine, const DensityOperator& sigma) {
  if (!sigma.basis()) throw DomainError("machine input must be a qubit string");
  const int len = base_length(sigma);
  if (len > machine.n()) {
    throw DomainError("input has base length " + std::to_string(len) +
                      ", machine accepts at most " + std::to_string(machine.n()));
  }
  return apply(machine.channel(), change_basis(sigma, machine.input_basis()));
}

}  // namespace qcount
