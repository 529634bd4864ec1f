#ifndef QSL_TOOLS_REPORT_WRITER_HPP
#define QSL_TOOLS_REPORT_WRITER_HPP

// Report documents are emitted by this small writer rather than a JSON
// library so that every number is serialized with 17 significant digits
// (lossless double round-trip) and key order stays deterministic.

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qslcli {

class Json {
 public:
  enum class Type { Null, Bool, Int, Double, String, Array, Object };

  Json() : type_(Type::Null) {}
  Json(bool b) : type_(Type::Bool), bool_(b) {}
  Json(long long i) : type_(Type::Int), int_(i) {}
  Json(int i) : type_(Type::Int), int_(i) {}
  Json(long i) : type_(Type::Int), int_(i) {}
  Json(unsigned long i) : type_(Type::Int), int_(static_cast<long long>(i)) {}
  Json(double d) : type_(Type::Double), double_(d) {}
  Json(const char* s) : type_(Type::String), string_(s) {}
  Json(std::string s) : type_(Type::String), string_(std::move(s)) {}

  static Json array() {
    Json j;
    j.type_ = Type::Array;
    return j;
  }
  static Json object() {
    Json j;
    j.type_ = Type::Object;
    return j;
  }

  void push_back(Json value) { items_.push_back(std::move(value)); }

  Json& operator[](const std::string& key) {
    for (auto& [k, v] : members_)
      if (k == key) return v;
    members_.emplace_back(key, Json());
    return members_.back().second;
  }

  std::string dump(bool pretty) const {
    std::string out;
    write(out, pretty, 0);
    if (pretty) out.push_back('\n');
    return out;
  }

 private:
  static void write_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  static void write_double(std::string& out, double d) {
    if (std::isinf(d)) {
      out += d > 0 ? "\"infinity\"" : "\"-infinity\"";
      return;
    }
    if (std::isnan(d)) {
      out += "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    out += buf;
  }

  void write(std::string& out, bool pretty, int depth) const {
    const std::string pad(pretty ? 2 * (depth + 1) : 0, ' ');
    const std::string close_pad(pretty ? 2 * depth : 0, ' ');
    switch (type_) {
      case Type::Null: out += "null"; break;
      case Type::Bool: out += bool_ ? "true" : "false"; break;
      case Type::Int: out += std::to_string(int_); break;
      case Type::Double: write_double(out, double_); break;
      case Type::String: write_escaped(out, string_); break;
      case Type::Array: {
        if (items_.empty()) {
          out += "[]";
          break;
        }
        out.push_back('[');
        for (std::size_t i = 0; i < items_.size(); ++i) {
          if (i) out.push_back(',');
          if (pretty) {
            out.push_back('\n');
            out += pad;
          }
          items_[i].write(out, pretty, depth + 1);
        }
        if (pretty) {
          out.push_back('\n');
          out += close_pad;
        }
        out.push_back(']');
        break;
      }
      case Type::Object: {
        if (members_.empty()) {
          out += "{}";
          break;
        }
        out.push_back('{');
        for (std::size_t i = 0; i < members_.size(); ++i) {
          if (i) out.push_back(',');
          if (pretty) {
            out.push_back('\n');
            out += pad;
          }
          write_escaped(out, members_[i].first);
          out.push_back(':');
          if (pretty) out.push_back(' ');
          members_[i].second.write(out, pretty, depth + 1);
        }
        if (pretty) {
          out.push_back('\n');
          out += close_pad;
        }
        out.push_back('}');
        break;
      }
    }
  }

  Type type_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> members_;
};

}  // namespace qslcli

#endif
