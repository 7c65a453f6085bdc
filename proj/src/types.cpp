#include "wirealg/types.hpp"

#include <charconv>
#include <set>

namespace wirealg {

WireType WireType::finite(std::vector<std::string> syms) {
  if (syms.empty()) throw TypeError("finite wire type needs at least one symbol");
  std::set<std::string> seen(syms.begin(), syms.end());
  if (seen.size() != syms.size())
    throw TypeError("finite wire type has duplicate symbols");
  WireType t;
  t.kind = Kind::Finite;
  t.symbols = std::move(syms);
  return t;
}

WireType WireType::real(int dim) {
  if (dim < 1) throw TypeError("real wire type needs dim >= 1");
  WireType t;
  t.kind = Kind::Real;
  t.dim = dim;
  return t;
}

std::size_t WireType::cardinality() const {
  if (!is_finite()) throw TypeError("cardinality of a real wire type");
  return symbols.size();
}

bool same_ports(const LabeledBox& a, const LabeledBox& b) {
  return a.inputs == b.inputs && a.outputs == b.outputs;
}

bool all_finite(const std::vector<WireType>& ports) {
  for (const auto& p : ports)
    if (!p.is_finite()) return false;
  return true;
}

bool all_real(const std::vector<WireType>& ports) {
  for (const auto& p : ports)
    if (!p.is_real()) return false;
  return true;
}

int total_real_dim(const std::vector<WireType>& ports) {
  int n = 0;
  for (const auto& p : ports) {
    if (!p.is_real()) throw TypeError("total_real_dim over a finite port");
    n += p.dim;
  }
  return n;
}

bool value_matches(const WireType& type, const Value& v) {
  if (type.is_finite()) {
    const auto* s = std::get_if<std::size_t>(&v);
    return s && *s < type.symbols.size();
  }
  const auto* r = std::get_if<std::vector<double>>(&v);
  return r && r->size() == static_cast<std::size_t>(type.dim);
}

void check_tuple(const std::vector<WireType>& ports, const ValueTuple& t,
                 const std::string& context) {
  if (ports.size() != t.size())
    throw TypeError(context + ": tuple arity " + std::to_string(t.size()) +
                    " does not match " + std::to_string(ports.size()) +
                    " ports");
  for (std::size_t i = 0; i < ports.size(); ++i)
    if (!value_matches(ports[i], t[i]))
      throw TypeError(context + ": value at port " + std::to_string(i) +
                      " does not match the port type");
}

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string value_to_string(const WireType& type, const Value& v) {
  if (!value_matches(type, v)) throw TypeError("value_to_string: ill-typed value");
  if (type.is_finite()) return type.symbols[std::get<std::size_t>(v)];
  const auto& r = std::get<std::vector<double>>(v);
  if (r.size() == 1) return format_double(r[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += format_double(r[i]);
  }
  return s + ")";
}

std::string tuple_to_string(const std::vector<WireType>& ports,
                            const ValueTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += " ";
    s += value_to_string(ports[i], t[i]);
  }
  return s;
}

FiniteDomain::FiniteDomain(const std::vector<WireType>& ports) {
  radix_.reserve(ports.size());
  for (const auto& p : ports) {
    if (!p.is_finite())
      throw TypeError("finite enumeration over a real-typed port");
    radix_.push_back(p.cardinality());
    size_ *= p.cardinality();
  }
}

std::vector<std::size_t> FiniteDomain::decode(std::size_t index) const {
  std::vector<std::size_t> out(radix_.size());
  decode_into(index, out);
  return out;
}

void FiniteDomain::decode_into(std::size_t index,
                               std::span<std::size_t> out) const {
  for (std::size_t i = radix_.size(); i-- > 0;) {
    out[i] = index % radix_[i];
    index /= radix_[i];
  }
}

std::size_t FiniteDomain::encode(std::span<const std::size_t> digits) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    if (digits[i] >= radix_[i]) throw TypeError("digit out of range");
    index = index * radix_[i] + digits[i];
  }
  return index;
}

std::size_t FiniteDomain::encode_tuple(const ValueTuple& t) const {
  if (t.size() != radix_.size()) throw TypeError("encode_tuple: arity mismatch");
  std::size_t index = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    std::size_t d = std::get<std::size_t>(t[i]);
    if (d >= radix_[i]) throw TypeError("encode_tuple: symbol out of range");
    index = index * radix_[i] + d;
  }
  return index;
}

ValueTuple FiniteDomain::decode_tuple(std::size_t index) const {
  auto digits = decode(index);
  ValueTuple t(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) t[i] = digits[i];
  return t;
}

}  // namespace wirealg
