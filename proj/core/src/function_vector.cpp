#include "alusafe/function_vector.hpp"

#include <algorithm>

namespace alusafe {

FunctionVector::FunctionVector(Width w, int num_vars, std::vector<uint32_t> outputs)
    : width_(w), num_vars_(num_vars), outputs_(std::move(outputs)) {
  if (num_vars_ < 1) throw usage_error("FunctionVector needs at least one variable");
  if (w.bits() * num_vars_ > 30)
    throw usage_error("function space 2^(w*k) too large to materialize");
  size_t want = size_t{1} << (w.bits() * num_vars_);
  if (outputs_.size() != want)
    throw usage_error("FunctionVector has " + std::to_string(outputs_.size()) +
                      " outputs, expected " + std::to_string(want));
  for (uint32_t v : outputs_)
    if (!w.contains(v)) throw usage_error("FunctionVector output out of range");
}

bool FunctionVector::is_constant() const {
  return std::all_of(outputs_.begin(), outputs_.end(),
                     [&](uint32_t v) { return v == outputs_[0]; });
}

int FunctionVector::packed_bits() const {
  return static_cast<int>(outputs_.size()) * width_.bits();
}

uint64_t FunctionVector::code() const {
  if (!packable()) throw usage_error("FunctionVector exceeds 64 packed bits");
  uint64_t c = 0;
  for (size_t i = 0; i < outputs_.size(); ++i)
    c |= uint64_t{outputs_[i]} << (i * width_.bits());
  return c;
}

FunctionVector FunctionVector::from_code(uint64_t code, Width w, int num_vars) {
  size_t n = size_t{1} << (w.bits() * num_vars);
  if (static_cast<int>(n) * w.bits() > 64) throw usage_error("shape exceeds 64 packed bits");
  std::vector<uint32_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = static_cast<uint32_t>(code >> (i * w.bits())) & w.mask();
  if (n * w.bits() < 64 && (code >> (n * w.bits())) != 0)
    throw usage_error("code has bits beyond the function vector");
  return FunctionVector(w, num_vars, std::move(out));
}

std::string FunctionVector::decimal_code() const {
  // Treat outputs as little-endian digits in base 2^w and convert to decimal.
  std::vector<uint32_t> limbs;  // base 2^32, little-endian
  limbs.push_back(0);
  int wbits = width_.bits();
  for (size_t i = outputs_.size(); i-- > 0;) {
    // limbs = limbs * 2^w + outputs[i]
    uint64_t carry = outputs_[i];
    for (size_t l = 0; l < limbs.size(); ++l) {
      uint64_t v = (uint64_t{limbs[l]} << wbits) + carry;
      limbs[l] = static_cast<uint32_t>(v);
      carry = v >> 32;
    }
    if (carry) limbs.push_back(static_cast<uint32_t>(carry));
  }
  std::string digits;
  while (limbs.size() > 1 || limbs[0] != 0) {
    // divide limbs by 10^9, emit remainder
    uint64_t rem = 0;
    for (size_t l = limbs.size(); l-- > 0;) {
      uint64_t v = (rem << 32) | limbs[l];
      limbs[l] = static_cast<uint32_t>(v / 1000000000u);
      rem = v % 1000000000u;
    }
    while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
    std::string chunk = std::to_string(rem);
    bool last = limbs.size() == 1 && limbs[0] == 0;
    if (!last) chunk.insert(chunk.begin(), 9 - chunk.size(), '0');
    digits.insert(0, chunk);
  }
  return digits.empty() ? "0" : digits;
}

FunctionVector FunctionVector::from_decimal(const std::string& text, Width w, int num_vars) {
  if (text.empty()) throw parse_error("empty function code", 0);
  std::vector<uint32_t> limbs{0};
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw parse_error("bad digit in function code", i);
    uint64_t carry = static_cast<uint64_t>(c - '0');
    for (size_t l = 0; l < limbs.size(); ++l) {
      uint64_t v = uint64_t{limbs[l]} * 10 + carry;
      limbs[l] = static_cast<uint32_t>(v);
      carry = v >> 32;
    }
    if (carry) limbs.push_back(static_cast<uint32_t>(carry));
  }
  size_t n = size_t{1} << (w.bits() * num_vars);
  std::vector<uint32_t> out(n);
  int wbits = w.bits();
  uint32_t mask = w.mask();
  for (size_t i = 0; i < n; ++i) {
    // out[i] = limbs mod 2^w; limbs >>= w
    out[i] = limbs[0] & mask;
    uint32_t carry_bits = 0;
    for (size_t l = limbs.size(); l-- > 0;) {
      uint32_t nv = (limbs[l] >> wbits) | (carry_bits << (32 - wbits));
      carry_bits = limbs[l] & mask;
      limbs[l] = nv;
    }
    while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
  }
  if (limbs.size() > 1 || limbs[0] != 0)
    throw parse_error("function code too large for shape", 0);
  return FunctionVector(w, num_vars, std::move(out));
}

bool FunctionVector::operator<(const FunctionVector& other) const {
  if (outputs_.size() != other.outputs_.size())
    return outputs_.size() < other.outputs_.size();
  // numeric order: compare from the most significant entry down
  for (size_t i = outputs_.size(); i-- > 0;)
    if (outputs_[i] != other.outputs_[i]) return outputs_[i] < other.outputs_[i];
  return false;
}

void unpack_assignment(uint64_t index, Width w, int num_vars, uint32_t* values) {
  for (int j = 0; j < num_vars; ++j) {
    values[j] = static_cast<uint32_t>(index) & w.mask();
    index >>= w.bits();
  }
}

FunctionVector tabulate_operator(const Operator& op) {
  Width w = op.width();
  int k = op.arity();
  if (w.bits() * k > 30) throw usage_error("operator too wide to tabulate as a FunctionVector");
  size_t n = size_t{1} << (w.bits() * k);
  std::vector<uint32_t> out(n);
  uint32_t args[3];
  for (size_t i = 0; i < n; ++i) {
    unpack_assignment(i, w, k, args);
    out[i] = op.eval_unchecked(std::span<const uint32_t>(args, k));
  }
  return FunctionVector(w, k, std::move(out));
}

FunctionVector tabulate_formula(const CompiledFormula& cf,
                                const std::vector<std::string>& var_names) {
  Width w = cf.width();
  int num_vars = static_cast<int>(var_names.size());
  if (num_vars < 1) throw usage_error("need at least one variable");
  if (w.bits() * num_vars > 30) throw usage_error("assignment space too large to tabulate");
  std::vector<int> slot_of_var;  // formula var index -> assignment slot
  for (const std::string& v : cf.variables()) {
    auto it = std::find(var_names.begin(), var_names.end(), v);
    if (it == var_names.end())
      throw usage_error("formula variable '" + v + "' not in the assignment variable list");
    slot_of_var.push_back(static_cast<int>(it - var_names.begin()));
  }
  size_t n = size_t{1} << (w.bits() * num_vars);
  std::vector<uint32_t> out(n);
  std::vector<uint32_t> vals(slot_of_var.size());
  std::vector<uint32_t> scratch;
  uint32_t unpacked[32];
  for (size_t i = 0; i < n; ++i) {
    unpack_assignment(i, w, num_vars, unpacked);
    for (size_t j = 0; j < slot_of_var.size(); ++j) vals[j] = unpacked[slot_of_var[j]];
    out[i] = cf.eval(vals, scratch);
  }
  return FunctionVector(w, num_vars, std::move(out));
}

FunctionVector projection_vector(Width w, int num_vars, int index) {
  if (index < 1 || index > num_vars) throw usage_error("projection index out of range");
  size_t n = size_t{1} << (w.bits() * num_vars);
  std::vector<uint32_t> out(n);
  for (size_t i = 0; i < n; ++i)
    out[i] = static_cast<uint32_t>(i >> ((index - 1) * w.bits())) & w.mask();
  return FunctionVector(w, num_vars, std::move(out));
}

FunctionVector constant_vector(Width w, int num_vars, uint32_t c) {
  if (!w.contains(c)) throw usage_error("constant out of range");
  size_t n = size_t{1} << (w.bits() * num_vars);
  return FunctionVector(w, num_vars, std::vector<uint32_t>(n, c));
}

}  // namespace alusafe
