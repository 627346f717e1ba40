#pragma once

#include "frfboot/bootstrap.hpp"
#include "frfboot/canonical_json.hpp"
#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/residual.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#ifndef FRFBOOT_VERSION_STRING
#define FRFBOOT_VERSION_STRING "1.0.0"
#endif

namespace frfboot {

inline constexpr int result_format_version = 1;
inline constexpr std::string_view software_version = FRFBOOT_VERSION_STRING;

struct InputDigest {
    std::string name;    ///< role of the input, e.g. "group1"
    std::string sha256;
    std::size_t n_subjects = 0;

    friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

/// Everything about a run that is not in the BandResult itself.
struct ResultMeta {
    BootstrapParams params;
    FrequencyGrid grid;
    TimeGrid time_grid;
    double oversample = 10.0;
    std::vector<InputDigest> inputs;
};

struct StatsSummary {
    std::size_t count = 0;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    std::map<std::string, double> quantiles;  ///< keyed "0.95" etc., order-statistic method
};

/// Parsed form of a serialised result.
struct ResultDocument {
    int format_version = result_format_version;
    std::string software_version;
    double alpha = 0.0;
    std::uint64_t B = 0;
    std::uint64_t Bs = 0;
    std::uint64_t seed = 0;
    std::string quantile_method;
    bool inclusive_endpoint = false;
    double oversample = 0.0;
    double sigma_floor = 0.0;
    std::vector<double> freqs;
    double base_freq = 0.0;
    double period = 0.0;
    double sample_rate = 0.0;
    std::uint64_t n_samples = 0;

    std::vector<double> times;
    std::vector<double> avg;
    std::vector<double> sigma;
    std::vector<double> band_upper;
    std::vector<double> band_lower;
    double cc = 0.0;
    bool reject = false;
    bool degenerate = false;
    std::uint64_t degenerate_replicates = 0;
    std::vector<Crossing> crossings;

    std::vector<double> residual_freqs;
    std::vector<double> residual_re;
    std::vector<double> residual_im;
    std::vector<double> residual_magnitude;

    StatsSummary stats;
    std::vector<InputDigest> inputs;
};

inline StatsSummary summarize_stats(std::span<const double> sorted) {
    StatsSummary s;
    s.count = sorted.size();
    if (sorted.empty())
        return s;
    s.min = sorted.front();
    s.max = sorted.back();
    const std::size_t n = sorted.size();
    s.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    for (const auto& [key, q] : std::initializer_list<std::pair<const char*, double>>{
             {"0.05", 0.05}, {"0.25", 0.25}, {"0.5", 0.5}, {"0.75", 0.75}, {"0.9", 0.9}, {"0.95", 0.95}, {"0.99", 0.99}})
        s.quantiles[key] = detail::order_quantile_sorted(sorted, q);
    return s;
}

namespace detail {

inline nlohmann::json to_json_array(std::span<const double> v) {
    auto a = nlohmann::json::array();
    for (double x : v)
        a.push_back(x);
    return a;
}

template <typename T>
T require(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(0, 0, std::string("result document is missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, 0, std::string("field '") + key + "': " + e.what());
    }
}

inline const nlohmann::json& require_object(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_object())
        throw ParseError(0, 0, std::string("result document is missing object '") + key + "'");
    return j.at(key);
}

} // namespace detail

/// Document for a finished run; the zero-line residual spectrum is computed
/// here so the document is self-contained.
inline ResultDocument make_document(const BandResult& r, const ResultMeta& meta) {
    const auto& tg = meta.time_grid;
    ResultDocument d;
    d.software_version = std::string(software_version);
    d.alpha = meta.params.alpha;
    d.B = meta.params.B;
    d.Bs = meta.params.Bs;
    d.seed = meta.params.seed;
    d.quantile_method = std::string(to_string(meta.params.quantile_method));
    d.inclusive_endpoint = tg.inclusive_endpoint();
    d.oversample = meta.oversample;
    d.sigma_floor = meta.params.sigma_floor.relative_epsilon;
    d.freqs = meta.grid.freqs();
    d.base_freq = meta.grid.base_freq();
    d.period = meta.grid.period();
    d.sample_rate = tg.sample_rate();
    d.n_samples = tg.n_samples();

    d.times = tg.times();
    d.avg = r.avg.samples;
    d.sigma = r.sigma;
    d.band_upper = r.band_upper;
    d.band_lower = r.band_lower;
    d.cc = r.cc;
    d.reject = r.reject;
    d.degenerate = r.degenerate;
    d.degenerate_replicates = r.degenerate_replicates;
    d.crossings = r.crossings;

    const auto spec = residual_spectrum(zero_line_residual(r), tg, meta.grid);
    d.residual_freqs = spec.freqs;
    for (const auto& v : spec.values) {
        d.residual_re.push_back(v.real());
        d.residual_im.push_back(v.imag());
    }
    d.residual_magnitude = spec.magnitude;
    d.stats = summarize_stats(r.stats);
    d.inputs = meta.inputs;
    return d;
}

inline ResultDocument read_result(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, 0, std::string("malformed or truncated result document: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError(0, 0, "result document is not an object");

    ResultDocument d;
    d.format_version = detail::require<int>(doc, "format_version");
    if (d.format_version != result_format_version)
        throw VersionError("result format version " + std::to_string(d.format_version) + " is not supported (expected " +
                           std::to_string(result_format_version) + ")");
    d.software_version = detail::require<std::string>(detail::require_object(doc, "software"), "version");

    const auto& p = detail::require_object(doc, "parameters");
    d.alpha = detail::require<double>(p, "alpha");
    d.B = detail::require<std::uint64_t>(p, "B");
    d.Bs = detail::require<std::uint64_t>(p, "Bs");
    d.seed = detail::require<std::uint64_t>(p, "seed");
    d.quantile_method = detail::require<std::string>(p, "quantile_method");
    d.inclusive_endpoint = detail::require<bool>(p, "inclusive_endpoint");
    d.oversample = detail::require<double>(p, "oversample");
    d.sigma_floor = detail::require<double>(p, "sigma_floor");
    const auto& g = detail::require_object(p, "grid");
    d.freqs = detail::require<std::vector<double>>(g, "freqs");
    d.base_freq = detail::require<double>(g, "base_freq");
    d.period = detail::require<double>(g, "period");
    d.sample_rate = detail::require<double>(p, "sample_rate");
    d.n_samples = detail::require<std::uint64_t>(p, "n_samples");

    d.times = detail::require<std::vector<double>>(doc, "times");
    d.avg = detail::require<std::vector<double>>(doc, "avg");
    d.sigma = detail::require<std::vector<double>>(doc, "sigma");
    d.band_upper = detail::require<std::vector<double>>(doc, "band_upper");
    d.band_lower = detail::require<std::vector<double>>(doc, "band_lower");
    for (const auto* v : {&d.times, &d.avg, &d.sigma, &d.band_upper, &d.band_lower})
        if (v->size() != d.n_samples)
            throw ParseError(0, 0, "time-domain arrays do not have n_samples entries");
    d.cc = detail::require<double>(doc, "cc");
    d.reject = detail::require<bool>(doc, "reject");
    d.degenerate = detail::require<bool>(doc, "degenerate");
    d.degenerate_replicates = detail::require<std::uint64_t>(doc, "degenerate_replicates");

    const auto crossings = detail::require<json>(doc, "crossings");
    if (!crossings.is_array())
        throw ParseError(0, 0, "'crossings' is not an array");
    for (const auto& c : crossings)
        d.crossings.push_back(Crossing{detail::require<double>(c, "t_start"), detail::require<double>(c, "t_end"),
                                       detail::require<std::size_t>(c, "first_sample"),
                                       detail::require<std::size_t>(c, "n_samples")});

    const auto& rs = detail::require_object(doc, "residual_spectrum");
    d.residual_freqs = detail::require<std::vector<double>>(rs, "freqs");
    d.residual_re = detail::require<std::vector<double>>(rs, "re");
    d.residual_im = detail::require<std::vector<double>>(rs, "im");
    d.residual_magnitude = detail::require<std::vector<double>>(rs, "magnitude");

    const auto& ss = detail::require_object(doc, "stats_summary");
    d.stats.count = detail::require<std::size_t>(ss, "count");
    d.stats.min = detail::require<double>(ss, "min");
    d.stats.median = detail::require<double>(ss, "median");
    d.stats.max = detail::require<double>(ss, "max");
    d.stats.quantiles = detail::require<std::map<std::string, double>>(ss, "quantiles");

    const auto inputs = detail::require<json>(doc, "inputs");
    if (!inputs.is_array())
        throw ParseError(0, 0, "'inputs' is not an array");
    for (const auto& in : inputs)
        d.inputs.push_back(InputDigest{detail::require<std::string>(in, "name"),
                                       detail::require<std::string>(in, "sha256"),
                                       detail::require<std::size_t>(in, "n_subjects")});
    return d;
}

/// Canonical serialisation; read_result(write_document(d)) reproduces every
/// field of d exactly.
inline std::string write_document(const ResultDocument& d) {
    using nlohmann::json;
    json params = json::object();
    params["alpha"] = d.alpha;
    params["B"] = d.B;
    params["Bs"] = d.Bs;
    params["seed"] = d.seed;
    params["quantile_method"] = d.quantile_method;
    params["inclusive_endpoint"] = d.inclusive_endpoint;
    params["oversample"] = d.oversample;
    params["sigma_floor"] = d.sigma_floor;
    params["grid"] = json{{"freqs", detail::to_json_array(d.freqs)}, {"base_freq", d.base_freq}, {"period", d.period}};
    params["sample_rate"] = d.sample_rate;
    params["n_samples"] = d.n_samples;

    json crossings = json::array();
    for (const auto& c : d.crossings)
        crossings.push_back(json{{"t_start", c.t_start},
                                 {"t_end", c.t_end},
                                 {"first_sample", static_cast<std::uint64_t>(c.first_sample)},
                                 {"n_samples", static_cast<std::uint64_t>(c.n_samples)}});
    json quantiles = json::object();
    for (const auto& [k, v] : d.stats.quantiles)
        quantiles[k] = v;
    json inputs = json::array();
    for (const auto& in : d.inputs)
        inputs.push_back(json{{"name", in.name},
                              {"sha256", in.sha256},
                              {"n_subjects", static_cast<std::uint64_t>(in.n_subjects)}});

    json doc = json::object();
    doc["format_version"] = d.format_version;
    doc["software"] = json{{"name", "frfboot"}, {"version", d.software_version}};
    doc["parameters"] = std::move(params);
    doc["times"] = detail::to_json_array(d.times);
    doc["avg"] = detail::to_json_array(d.avg);
    doc["sigma"] = detail::to_json_array(d.sigma);
    doc["band_upper"] = detail::to_json_array(d.band_upper);
    doc["band_lower"] = detail::to_json_array(d.band_lower);
    doc["cc"] = d.cc;
    doc["reject"] = d.reject;
    doc["degenerate"] = d.degenerate;
    doc["degenerate_replicates"] = d.degenerate_replicates;
    doc["crossings"] = std::move(crossings);
    doc["residual_spectrum"] = json{{"freqs", detail::to_json_array(d.residual_freqs)},
                                    {"re", detail::to_json_array(d.residual_re)},
                                    {"im", detail::to_json_array(d.residual_im)},
                                    {"magnitude", detail::to_json_array(d.residual_magnitude)}};
    doc["stats_summary"] = json{{"count", static_cast<std::uint64_t>(d.stats.count)},
                                {"min", d.stats.min},
                                {"median", d.stats.median},
                                {"max", d.stats.max},
                                {"quantiles", std::move(quantiles)}};
    doc["inputs"] = std::move(inputs);
    return canonical_dump(doc);
}

inline std::string write_result(const BandResult& r, const ResultMeta& meta) {
    return write_document(make_document(r, meta));
}

} // namespace frfboot
