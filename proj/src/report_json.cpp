#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "fuzzyframes/cli_io.hpp"

namespace fuzzyframes::cli {

namespace {

std::string format_number(double value) {
  if (std::isnan(value)) return "\"nan\"";
  if (std::isinf(value)) return value > 0 ? "\"inf\"" : "\"-inf\"";
  if (value == 0.0) return "0";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
  return std::string(buffer, result.ptr);
}

std::string format_scalar(const Json& value) {
  switch (value.type()) {
    case Json::value_t::null: return "null";
    case Json::value_t::boolean: return value.get<bool>() ? "true" : "false";
    case Json::value_t::number_integer: return std::to_string(value.get<std::int64_t>());
    case Json::value_t::number_unsigned: return std::to_string(value.get<std::uint64_t>());
    case Json::value_t::number_float: return format_number(value.get<double>());
    case Json::value_t::string: return value.dump();
    default: return value.dump();
  }
}

void write(const Json& value, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (value.is_object()) {
    if (value.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, item] : value.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write(item, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (value.is_array()) {
    if (value.empty()) {
      out += "[]";
      return;
    }
    // Arrays of scalars stay on one line.
    const bool flat = std::all_of(value.begin(), value.end(), [](const Json& v) {
      return v.is_primitive() || (v.is_array() && v.size() <= 2 &&
                                  std::all_of(v.begin(), v.end(), [](const Json& w) { return w.is_primitive(); }));
    });
    if (flat) {
      out += "[";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ", ";
        first = false;
        write(item, depth + 1, out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& item : value) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      write(item, depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    out += format_scalar(value);
  }
}

void write_text(const Json& value, const std::string& path, std::string& out) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) write_text(item, path.empty() ? key : path + "." + key, out);
  } else if (value.is_array() && !value.empty() &&
             std::any_of(value.begin(), value.end(), [](const Json& v) { return v.is_object(); })) {
    for (std::size_t i = 0; i < value.size(); ++i) write_text(value[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    std::string rendered;
    write(value, 0, rendered);
    out += path + " = " + rendered + "\n";
  }
}

}  // namespace

std::string dump_canonical(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

std::string dump_text(const Json& value) {
  std::string out;
  write_text(value, "", out);
  return out;
}

Json encode_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

Json encode(std::span<const Scalar> v, Field field) {
  Json out = Json::array();
  for (const auto& entry : v) {
    if (field == Field::real) out.push_back(encode_number(entry.real()));
    else out.push_back(Json::array({encode_number(entry.real()), encode_number(entry.imag())}));
  }
  return out;
}

Json encode(const Matrix& m, Field field) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    out.push_back(encode(row, field));
  }
  return out;
}

std::string input_digest(const ProblemFile& problem) {
  // FNV-1a over the canonical serialization.
  const std::string canonical = dump_canonical(to_json(problem));
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace fuzzyframes::cli
