#ifndef GFT_REPORT_IO_HPP
#define GFT_REPORT_IO_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gft/class_spec.hpp"
#include "gft/construct.hpp"
#include "gft/search.hpp"

namespace gft {

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits: enough to reproduce the exact double on re-parse,
// which is what makes emitted reports byte-stable across runs.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Complex values travel as "re+imi" in both CSV and JSON.
inline std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    s += '-';
    s += format_double(-im);
  } else {
    s += '+';
    s += format_double(im);
  }
  s += 'i';
  return s;
}

namespace detail {

inline double parse_double_token(std::string_view t) {
  std::string_view body = t;
  // from_chars rejects an explicit plus sign; our "re+imi" format relies on it.
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || r.ec != std::errc() || r.ptr != body.data() + body.size())
    throw std::invalid_argument("parse_complex: bad number '" + std::string(t) + "'");
  return v;
}

}  // namespace detail

// Accepts "re+imi", "re-imi", a plain real, or a pure imaginary like "2i".
inline Complex parse_complex(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("parse_complex: empty input");

  if (text.back() != 'i') return {detail::parse_double_token(text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t j = 1; j < body.size(); ++j) {
    if ((body[j] == '+' || body[j] == '-') && body[j - 1] != 'e' && body[j - 1] != 'E')
      split = j;
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, detail::parse_double_token(body)};
  }
  const std::string_view im = body.substr(split);
  const double imag = im == "+"   ? 1.0
                      : im == "-" ? -1.0
                                  : detail::parse_double_token(im);
  return {detail::parse_double_token(body.substr(0, split)), imag};
}

// Minimal deterministic JSON emitter: keys appear exactly in call order and
// doubles go through format_double, so equal data yields equal bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object() {
    value_prefix();
    out_ += '{';
    frames_.push_back({true, 0});
    return *this;
  }

  JsonWriter& end_object() {
    frames_.pop_back();
    out_ += '}';
    return *this;
  }

  JsonWriter& begin_array() {
    value_prefix();
    out_ += '[';
    frames_.push_back({false, 0});
    return *this;
  }

  JsonWriter& end_array() {
    frames_.pop_back();
    out_ += ']';
    return *this;
  }

  JsonWriter& key(std::string_view k) {
    if (frames_.back().count++ > 0) out_ += ',';
    append_string(k);
    out_ += ':';
    have_key_ = true;
    return *this;
  }

  JsonWriter& value(std::string_view s) {
    value_prefix();
    append_string(s);
    return *this;
  }

  JsonWriter& value(const char* s) { return value(std::string_view(s)); }

  JsonWriter& value(double v) {
    value_prefix();
    if (std::isfinite(v))
      out_ += format_double(v);
    else
      out_ += "null";
    return *this;
  }

  JsonWriter& value(int v) {
    value_prefix();
    out_ += std::to_string(v);
    return *this;
  }

  JsonWriter& value(std::uint64_t v) {
    value_prefix();
    out_ += std::to_string(v);
    return *this;
  }

  JsonWriter& value(bool v) {
    value_prefix();
    out_ += v ? "true" : "false";
    return *this;
  }

  JsonWriter& null() {
    value_prefix();
    out_ += "null";
    return *this;
  }

  const std::string& str() const { return out_; }

 private:
  struct Frame {
    bool is_object;
    int count;
  };

  void value_prefix() {
    if (have_key_) {
      have_key_ = false;
      return;
    }
    if (!frames_.empty() && !frames_.back().is_object && frames_.back().count++ > 0)
      out_ += ',';
  }

  void append_string(std::string_view s) {
    out_ += '"';
    for (char ch : s) {
      switch (ch) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            out_ += buf;
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<Frame> frames_;
  bool have_key_ = false;
};

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline const char* to_string(CesaroFlavor f) {
  return f == CesaroFlavor::Normalized ? "normalized" : "classical";
}

// Spec fields shared by every report row. Operator fields are null when the
// operator is the identity with no index attached.
inline void append_spec_json(JsonWriter& w, const ClassSpec& spec) {
  w.key("class").value(spec.family_name());
  if (spec.cesaro.has_value()) {
    w.key("k").value(spec.cesaro->k);
    w.key("op_alpha").value(spec.cesaro->alpha);
  } else {
    w.key("k").null();
    w.key("op_alpha").null();
  }
  w.key("flavor").value(to_string(spec.flavor));
  w.key("unit_weights").value(spec.identity_operator());
  switch (spec.family_tag()) {
    case ClassFamily::Psi: {
      const auto& psi = std::get<PsiCoefficients>(spec.family);
      w.key("B1").value(psi.B1);
      w.key("B2").value(psi.B2);
      break;
    }
    case ClassFamily::Strong: {
      const auto& q = std::get<QParams>(spec.family);
      w.key("alpha").value(q.alpha);
      w.key("lambda").value(q.lambda);
      break;
    }
    case ClassFamily::RealPart: {
      const auto& h = std::get<HBetaParams>(spec.family);
      w.key("beta").value(h.beta);
      w.key("lambda").value(h.lambda);
      break;
    }
  }
}

namespace detail {

// The same spec fields as append_spec_json, padded into fixed CSV columns:
// class,k,op_alpha,flavor,unit_weights,B1,B2,alpha,lambda,beta
inline void append_spec_csv(std::string& out, const ClassSpec& spec) {
  out += spec.family_name();
  out += ',';
  if (spec.cesaro.has_value()) {
    out += std::to_string(spec.cesaro->k);
    out += ',';
    out += format_double(spec.cesaro->alpha);
  } else {
    out += ',';
  }
  out += ',';
  out += to_string(spec.flavor);
  out += ',';
  out += spec.identity_operator() ? "true" : "false";
  std::string b1, b2, alpha, lambda, beta;
  switch (spec.family_tag()) {
    case ClassFamily::Psi: {
      const auto& psi = std::get<PsiCoefficients>(spec.family);
      b1 = format_double(psi.B1);
      b2 = format_double(psi.B2);
      break;
    }
    case ClassFamily::Strong: {
      const auto& q = std::get<QParams>(spec.family);
      alpha = format_double(q.alpha);
      lambda = format_double(q.lambda);
      break;
    }
    case ClassFamily::RealPart: {
      const auto& h = std::get<HBetaParams>(spec.family);
      beta = format_double(h.beta);
      lambda = format_double(h.lambda);
      break;
    }
  }
  for (const std::string& field : {b1, b2, alpha, lambda, beta}) {
    out += ',';
    out += field;
  }
}

}  // namespace detail

inline constexpr const char* kConsistencyCsvHeader =
    "class,k,op_alpha,flavor,unit_weights,B1,B2,alpha,lambda,beta,"
    "formula,formula_value,undefined_reason,oracle_max,seed1,seed2,exceedance,verdict";

inline std::string consistency_csv_row(const ConsistencyReport& r) {
  std::string out;
  detail::append_spec_csv(out, r.spec);
  out += ',';
  out += to_string(r.formula);
  out += ',';
  out += std::isfinite(r.formula_value) ? format_double(r.formula_value)
                                        : std::string("undefined");
  out += ',';
  out += csv_escape(r.undefined_reason);
  out += ',';
  out += format_double(r.oracle_max);
  out += ',';
  out += format_complex(r.seed1);
  out += ',';
  out += format_complex(r.seed2);
  out += ',';
  out += format_double(r.exceedance);
  out += ',';
  out += to_string(r.verdict);
  return out;
}

inline void append_consistency_json(JsonWriter& w, const ConsistencyReport& r) {
  w.begin_object();
  append_spec_json(w, r.spec);
  w.key("formula").value(to_string(r.formula));
  w.key("formula_value").value(r.formula_value);
  w.key("undefined_reason").value(r.undefined_reason);
  w.key("oracle_max").value(r.oracle_max);
  w.key("seed1").value(format_complex(r.seed1));
  w.key("seed2").value(format_complex(r.seed2));
  w.key("exceedance").value(r.exceedance);
  w.key("verdict").value(to_string(r.verdict));
  w.end_object();
}

inline std::string verification_json(const VerificationReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("class").value(r.spec.family_name());
  w.key("params");
  w.begin_object();
  append_spec_json(w, r.spec);
  w.end_object();
  w.key("radius").value(r.radius);
  w.key("samples").value(r.samples);
  w.key("extremal_value").value(r.extremal_value);
  w.key("threshold").value(r.threshold);
  w.key("pass").value(r.pass);
  w.key("flags");
  w.begin_array();
  for (const std::string& f : r.flags) w.value(f);
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace gft

#endif  // GFT_REPORT_IO_HPP
