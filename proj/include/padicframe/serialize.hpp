#pragma once

#include "padicframe/frame.hpp"

#include <nlohmann/json.hpp>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicframe {

using Json = nlohmann::ordered_json;

/// A config problem tied to a line of the source document (line 0 when there is no source).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A parsed JSON document plus the source line of every value, keyed by JSON pointer.
class LocatedJson {
public:
    static LocatedJson parse(const std::string& text);

    const Json& root() const noexcept { return root_; }

    /// Line of the value at pointer, or of its nearest recorded ancestor.
    std::size_t line_of(std::string pointer) const {
        for (;;) {
            auto it = lines_.find(pointer);
            if (it != lines_.end()) return it->second;
            const auto slash = pointer.rfind('/');
            if (slash == std::string::npos) return 1;
            pointer.erase(slash);
        }
    }

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw ConfigError(line_of(pointer), message);
    }

private:
    Json root_;
    std::map<std::string, std::size_t> lines_;
};

namespace detail {

struct LineTracker {
    std::size_t current = 1;
    std::size_t last_token = 1;
    void see(char c) {
        if (c == '\n') {
            ++current;
        } else if (c != ' ' && c != '\t' && c != '\r') {
            last_token = current;
        }
    }
};

/// Character iterator that reports every character the parser reads to a LineTracker.
class TrackingIterator {
public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    TrackingIterator() = default;
    TrackingIterator(const char* ptr, LineTracker* tracker) : ptr_(ptr), tracker_(tracker) {}

    reference operator*() const {
        tracker_->see(*ptr_);
        return *ptr_;
    }
    TrackingIterator& operator++() {
        ++ptr_;
        return *this;
    }
    TrackingIterator operator++(int) {
        TrackingIterator old = *this;
        ++ptr_;
        return old;
    }
    friend bool operator==(const TrackingIterator& x, const TrackingIterator& y) { return x.ptr_ == y.ptr_; }

private:
    const char* ptr_ = nullptr;
    LineTracker* tracker_ = nullptr;
};

class LocatingSax {
public:
    using number_integer_t = Json::number_integer_t;
    using number_unsigned_t = Json::number_unsigned_t;
    using number_float_t = Json::number_float_t;
    using string_t = Json::string_t;
    using binary_t = Json::binary_t;

    LocatingSax(Json& root, std::map<std::string, std::size_t>& lines, const LineTracker& tracker,
                std::size_t text_size, const std::string& text)
        : dom_(root, false), lines_(lines), tracker_(tracker), text_size_(text_size), text_(text) {}

    bool null() { return scalar() && dom_.null(); }
    bool boolean(bool v) { return scalar() && dom_.boolean(v); }
    bool number_integer(number_integer_t v) { return scalar() && dom_.number_integer(v); }
    bool number_unsigned(number_unsigned_t v) { return scalar() && dom_.number_unsigned(v); }
    bool number_float(number_float_t v, const string_t& s) { return scalar() && dom_.number_float(v, s); }
    bool string(string_t& v) { return scalar() && dom_.string(v); }
    bool binary(binary_t& v) { return scalar() && dom_.binary(v); }

    bool start_object(std::size_t n) {
        record();
        frames_.push_back({false, 0, {}});
        return dom_.start_object(n);
    }
    bool key(string_t& k) {
        frames_.back().key = k;
        return dom_.key(k);
    }
    bool end_object() {
        frames_.pop_back();
        advance();
        return dom_.end_object();
    }
    bool start_array(std::size_t n) {
        record();
        frames_.push_back({true, 0, {}});
        return dom_.start_array(n);
    }
    bool end_array() {
        frames_.pop_back();
        advance();
        return dom_.end_array();
    }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        std::size_t line = 1;
        const std::size_t stop = std::min(position, text_size_);
        for (std::size_t i = 0; i + 1 < stop; ++i)
            if (text_[i] == '\n') ++line;
        std::string what = ex.what();
        const auto colon = what.find("syntax error");
        throw ConfigError(line, "malformed JSON: " + (colon == std::string::npos ? what : what.substr(colon)));
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };

    std::string pointer() const {
        std::string out;
        for (const auto& f : frames_) {
            out += '/';
            if (f.array) {
                out += std::to_string(f.index);
                continue;
            }
            for (char c : f.key) {
                if (c == '~') out += "~0";
                else if (c == '/') out += "~1";
                else out += c;
            }
        }
        return out;
    }
    void record() { lines_.emplace(pointer(), tracker_.last_token); }
    void advance() {
        if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    }
    bool scalar() {
        record();
        advance();
        return true;
    }

    nlohmann::detail::json_sax_dom_parser<Json> dom_;
    std::map<std::string, std::size_t>& lines_;
    const LineTracker& tracker_;
    std::vector<Frame> frames_;
    std::size_t text_size_;
    const std::string& text_;
};

}  // namespace detail

inline LocatedJson LocatedJson::parse(const std::string& text) {
    LocatedJson out;
    detail::LineTracker tracker;
    detail::LocatingSax sax(out.root_, out.lines_, tracker, text.size(), text);
    const char* begin = text.data();
    Json::sax_parse(detail::TrackingIterator(begin, &tracker), detail::TrackingIterator(begin + text.size(), &tracker),
                    &sax);
    return out;
}

// ---- output ----

inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const CycloNumber& x) {
    Json powers = Json::array();
    const auto& c = x.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) powers.push_back(Json::array({static_cast<std::int64_t>(k), to_string(c[k])}));
    return Json{{"zeta_powers", powers}};
}

inline Json to_json(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

/// Rational field elements print as plain rational strings, others in the zeta_powers form.
template <class Coeff>
Json scalar_to_json(const Coeff& c) {
    if constexpr (std::is_same_v<Coeff, CycloNumber>) {
        if (c.is_rational()) return to_string(c.constant());
    }
    return to_json(c);
}

inline Json to_json(const WaveletIndex& idx) {
    return Json{{"gamma", idx.gamma}, {"n", to_string(idx.n)}, {"j", idx.j}};
}

inline Json to_json(const AffineElement& g) { return Json{{"a", to_string(g.a())}, {"b", to_string(g.b())}}; }

inline Json to_json(const StabilizerSpec& s) {
    return Json{{"gamma_A", s.gamma_A}, {"gamma_0", s.gamma_0}, {"n_0", to_string(s.n_0)}};
}

inline Json to_json(const OrbitIndex& idx) {
    return Json{{"gamma", idx.gamma}, {"n", to_string(idx.n)}, {"J", idx.J}};
}

template <class Coeff>
Json to_json(const BasicTestFunction<Coeff>& f) {
    Json terms = Json::array();
    for (const auto& [idx, c] : f.terms()) {
        Json t = to_json(idx);
        t["coeff"] = scalar_to_json(c);
        terms.push_back(std::move(t));
    }
    return terms;
}

inline Json to_json(const GenericityVerdict& v) {
    Json w = Json::array();
    for (const auto& g : v.witnesses) w.push_back(to_json(g));
    Json c = Json::array();
    for (const auto& g : v.contradictions) c.push_back(to_json(g));
    return Json{{"generic_up_to_depth", v.generic_up_to_depth},
                {"depth", v.depth},
                {"invariant_classes", v.invariant_classes},
                {"predicted_classes", v.predicted_classes},
                {"witnesses", w},
                {"contradictions", c}};
}

template <class Coeff>
Json to_json(const FrameReport<Coeff>& r) {
    Json checks = Json::array();
    for (const auto& m : r.multiplicity_checks)
        checks.push_back(Json{{"gamma1", m.gamma1},
                              {"counted", m.counted.str()},
                              {"expected", m.expected.str()},
                              {"ok", m.ok()}});
    Json residuals = Json::array();
    for (const auto& x : r.residuals) residuals.push_back(scalar_to_json(x));
    return Json{{"frame_bound", scalar_to_json(r.frame_bound)},
                {"exact", r.exact},
                {"g_count", r.g_count},
                {"all_zero_residuals", r.all_zero_residuals},
                {"residuals", residuals},
                {"multiplicity_checks", checks}};
}

// ---- input ----

/// Rational from a JSON string "a/b" or an integer.
inline Rational rational_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) doc.fail(ptr, "expected a rational string such as \"1/3\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        doc.fail(ptr, e.what());
    }
}

inline std::int64_t integer_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr) {
    if (!v.is_number_integer()) doc.fail(ptr, "expected an integer");
    return v.get<std::int64_t>();
}

inline CycloNumber cyclo_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr, std::int64_t p) {
    if (v.is_string() || v.is_number_integer()) return CycloNumber(p, rational_from_json(doc, v, ptr));
    if (!v.is_object() || !v.contains("zeta_powers") || !v["zeta_powers"].is_array())
        doc.fail(ptr, "expected {\"zeta_powers\": [[m, \"a/b\"], ...]} or a rational string");
    CycloNumber out(p);
    const auto& list = v["zeta_powers"];
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string item = ptr + "/zeta_powers/" + std::to_string(k);
        const auto& pair = list[k];
        if (!pair.is_array() || pair.size() != 2) doc.fail(item, "expected a [power, \"a/b\"] pair");
        const std::int64_t m = integer_from_json(doc, pair[0], item + "/0");
        out += root_of_unity(m, p) * rational_from_json(doc, pair[1], item + "/1");
    }
    return out;
}

template <class Coeff>
Coeff coefficient_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr, std::int64_t p) {
    if constexpr (std::is_same_v<Coeff, CycloNumber>) {
        if (v.is_array()) doc.fail(ptr, "complex literal [re, im] needs \"mode\": \"float\"");
        return cyclo_from_json(doc, v, ptr, p);
    } else {
        if (v.is_array()) {
            if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                doc.fail(ptr, "expected a complex literal [re, im]");
            return {v[0].get<double>(), v[1].get<double>()};
        }
        return to_complex_float(cyclo_from_json(doc, v, ptr, p));
    }
}

inline WaveletIndex wavelet_index_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr,
                                            const PrimeContext& ctx) {
    if (!v.is_object()) doc.fail(ptr, "expected a wavelet term object");
    for (const char* key : {"gamma", "n", "j"})
        if (!v.contains(key)) doc.fail(ptr, std::string("missing field \"") + key + "\"");
    const std::int64_t gamma = integer_from_json(doc, v["gamma"], ptr + "/gamma");
    const Rational n = rational_from_json(doc, v["n"], ptr + "/n");
    const std::int64_t j = integer_from_json(doc, v["j"], ptr + "/j");
    if (!detail::has_p_power_denominator(n, ctx.p()))
        doc.fail(ptr + "/n", "translation " + to_string(n) + " is not p-integral denominator");
    if (j < 1 || j >= ctx.p()) doc.fail(ptr + "/j", "j = " + std::to_string(j) + " outside 1..p-1");
    // translations are read modulo Z_p
    return WaveletIndex{gamma, detail::residue(n, ctx.p(), 0), j};
}

template <class Coeff>
BasicTestFunction<Coeff> function_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr,
                                            const PrimeContext& ctx) {
    if (!v.is_array()) doc.fail(ptr, "expected an array of wavelet terms");
    BasicTestFunction<Coeff> f(ctx);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string item = ptr + "/" + std::to_string(k);
        const WaveletIndex idx = wavelet_index_from_json(doc, v[k], item, ctx);
        const Coeff c = v[k].contains("coeff") ? coefficient_from_json<Coeff>(doc, v[k]["coeff"], item + "/coeff", ctx.p())
                                               : CoefficientTraits<Coeff>::from_integer(1, ctx.p());
        f.add_term(idx, c);
    }
    return f;
}

inline AffineElement affine_from_json(const LocatedJson& doc, const Json& v, const std::string& ptr,
                                      const PrimeContext& ctx) {
    if (!v.is_object() || !v.contains("a") || !v.contains("b"))
        doc.fail(ptr, "expected {\"a\": \"rational\", \"b\": \"rational\"}");
    const Rational a = rational_from_json(doc, v["a"], ptr + "/a");
    const Rational b = rational_from_json(doc, v["b"], ptr + "/b");
    if (a == 0) doc.fail(ptr + "/a", "affine element needs a != 0");
    return AffineElement(ctx, a, b);
}

}  // namespace padicframe
