#include "cse/value.hpp"

#include <functional>

namespace cse {

const char* type_name(Type t) {
  switch (t) {
    case Type::Val: return "Val";
    case Type::Nat: return "Nat";
    case Type::Bool: return "Bool";
    case Type::Str: return "Str";
    case Type::List: return "List";
  }
  return "?";
}

std::optional<Type> type_from_name(const std::string& s) {
  if (s == "Val") return Type::Val;
  if (s == "Nat") return Type::Nat;
  if (s == "Bool") return Type::Bool;
  if (s == "Str") return Type::Str;
  if (s == "List") return Type::List;
  return std::nullopt;
}

Value Value::nat(Nat n) { return Value(Rep(std::in_place_index<0>, std::move(n))); }
Value Value::boolean(bool b) { return Value(Rep(std::in_place_index<1>, b)); }
Value Value::str(std::string s) { return Value(Rep(std::in_place_index<2>, std::move(s))); }
Value Value::list(ValueList items) {
  return Value(Rep(std::in_place_index<4>,
                   std::make_shared<const ValueList>(std::move(items))));
}

bool Value::has_type(Type t) const {
  switch (t) {
    case Type::Val: return true;
    case Type::Nat: return is_nat();
    case Type::Bool: return is_bool();
    case Type::Str: return is_str();
    case Type::List: return is_list();
  }
  return false;
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::Nat: return as_nat().str();
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Str: return quote_string(as_str());
    case Kind::Nil: return "nil";
    case Kind::List: {
      std::string out = "[";
      bool first = true;
      for (const auto& v : as_list()) {
        if (!first) out += ", ";
        first = false;
        out += v.to_string();
      }
      return out + "]";
    }
  }
  return "?";
}

std::size_t Value::hash() const {
  std::size_t h = static_cast<std::size_t>(kind()) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  switch (kind()) {
    case Kind::Nat: mix(std::hash<std::string>{}(as_nat().str())); break;
    case Kind::Bool: mix(as_bool() ? 1 : 2); break;
    case Kind::Str: mix(std::hash<std::string>{}(as_str())); break;
    case Kind::Nil: break;
    case Kind::List:
      for (const auto& v : as_list()) mix(v.hash());
      break;
  }
  return h;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Nat: return a.as_nat() == b.as_nat();
    case Value::Kind::Bool: return a.as_bool() == b.as_bool();
    case Value::Kind::Str: return a.as_str() == b.as_str();
    case Value::Kind::Nil: return true;
    case Value::Kind::List: return a.as_list() == b.as_list();
  }
  return false;
}

bool operator<(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Value::Kind::Nat: return a.as_nat() < b.as_nat();
    case Value::Kind::Bool: return a.as_bool() < b.as_bool();
    case Value::Kind::Str: return a.as_str() < b.as_str();
    case Value::Kind::Nil: return false;
    case Value::Kind::List: return a.as_list() < b.as_list();
  }
  return false;
}

}  // namespace cse
