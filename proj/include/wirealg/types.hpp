#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wirealg {

/// Thrown when an operation is handed structurally unusable data
/// (mismatched interfaces, ill-typed tuples, out-of-range indices).
class TypeError : public std::runtime_error {
 public:
  explicit TypeError(const std::string& what) : std::runtime_error(what) {}
};

/// The type carried by a single port: either a finite alphabet of
/// symbols or a real vector space of fixed dimension.
struct WireType {
  enum class Kind { Finite, Real };

  Kind kind = Kind::Real;
  std::vector<std::string> symbols;  // Finite only; non-empty, duplicate-free
  int dim = 1;                       // Real only; >= 1

  static WireType finite(std::vector<std::string> syms);
  static WireType real(int dim = 1);

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_real() const { return kind == Kind::Real; }

  /// Alphabet size for Finite ports.
  std::size_t cardinality() const;

  friend bool operator==(const WireType& a, const WireType& b) {
    if (a.kind != b.kind) return false;
    return a.is_finite() ? a.symbols == b.symbols : a.dim == b.dim;
  }
};

/// An interface: named box with ordered, typed input and output ports.
/// A box with both port lists empty is the monoidal unit.
struct LabeledBox {
  std::string name;
  std::vector<WireType> inputs;
  std::vector<WireType> outputs;

  friend bool operator==(const LabeledBox& a, const LabeledBox& b) {
    return a.name == b.name && a.inputs == b.inputs && a.outputs == b.outputs;
  }
};

/// Port-list equality; box names are irrelevant for composability.
bool same_ports(const LabeledBox& a, const LabeledBox& b);

/// True when every port in the list is Finite (resp. Real).
bool all_finite(const std::vector<WireType>& ports);
bool all_real(const std::vector<WireType>& ports);

/// Sum of Real dimensions over a port list.
int total_real_dim(const std::vector<WireType>& ports);

/// One value on one port: the symbol index into a Finite alphabet, or a
/// real vector matching the port dimension.
using Value = std::variant<std::size_t, std::vector<double>>;

/// One value per port of a declared port list.
using ValueTuple = std::vector<Value>;

bool value_matches(const WireType& type, const Value& v);

/// Throws TypeError unless the tuple matches the port list, arity and all.
void check_tuple(const std::vector<WireType>& ports, const ValueTuple& t,
                 const std::string& context);

/// Renders a value with the port's symbols / shortest round-trip decimals.
std::string value_to_string(const WireType& type, const Value& v);
std::string tuple_to_string(const std::vector<WireType>& ports,
                            const ValueTuple& t);

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double x);

/// Mixed-radix indexing for the product of finite port alphabets.
/// The first port is the most significant digit, so index order equals
/// lexicographic order of the decoded tuples.
class FiniteDomain {
 public:
  FiniteDomain() = default;
  explicit FiniteDomain(const std::vector<WireType>& ports);

  std::size_t size() const { return size_; }
  std::size_t arity() const { return radix_.size(); }
  std::size_t radix(std::size_t i) const { return radix_[i]; }

  std::vector<std::size_t> decode(std::size_t index) const;
  void decode_into(std::size_t index, std::span<std::size_t> out) const;
  std::size_t encode(std::span<const std::size_t> digits) const;

  std::size_t encode_tuple(const ValueTuple& t) const;
  ValueTuple decode_tuple(std::size_t index) const;

 private:
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
};

}  // namespace wirealg
