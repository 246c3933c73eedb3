#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cse {

using Nat = boost::multiprecision::cpp_int;

enum class Type : std::uint8_t { Val, Nat, Bool, Str, List };

const char* type_name(Type t);
std::optional<Type> type_from_name(const std::string& s);

class Value;
using ValueList = std::vector<Value>;

// Dynamically typed runtime value: Nat | Bool | Str | Nil | List.
class Value {
 public:
  enum class Kind : std::uint8_t { Nat = 0, Bool = 1, Str = 2, Nil = 3, List = 4 };

  Value() : v_(std::monostate{}) {}

  static Value nat(Nat n);
  static Value nat(std::uint64_t n) { return nat(Nat(n)); }
  static Value boolean(bool b);
  static Value str(std::string s);
  static Value nil() { return Value(); }
  static Value list(ValueList items);

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_nat() const { return kind() == Kind::Nat; }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_str() const { return kind() == Kind::Str; }
  bool is_nil() const { return kind() == Kind::Nil; }
  bool is_list() const { return kind() == Kind::List; }
  bool has_type(Type t) const;

  const Nat& as_nat() const { return std::get<0>(v_); }
  bool as_bool() const { return std::get<1>(v_); }
  const std::string& as_str() const { return std::get<2>(v_); }
  const ValueList& as_list() const { return *std::get<4>(v_); }

  // Literal syntax, e.g. ["Error", 7].
  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  // Total order: by kind, then by content.
  friend bool operator<(const Value& a, const Value& b);

 private:
  using Rep = std::variant<Nat, bool, std::string, std::monostate,
                           std::shared_ptr<const ValueList>>;
  explicit Value(Rep r) : v_(std::move(r)) {}
  Rep v_;
};

std::string quote_string(const std::string& s);

}  // namespace cse
