#include "uavchan/io.hpp"

#include "uavchan/errors.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uavchan::io {

using json = nlohmann::ordered_json;

std::string format_number(double value) {
    std::array<char, 64> buf{};
    // Whole numbers (sizes, rates, step indices) print without an exponent.
    const bool whole = value == std::trunc(value) && std::fabs(value) < 1e15;
    auto [end, ec] = whole ? std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                           std::chars_format::fixed)
                           : std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), end);
}

std::string table_to_csv(const SweepTable& table) {
    std::string out;
    const auto& cols = table.column_names();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out += ',';
        out += cols[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const auto row = table.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string table_to_json(const SweepTable& table) {
    json rows = json::array();
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const auto row = table.row(r);
        rows.push_back(json(std::vector<double>(row.begin(), row.end())));
    }
    json doc = {{"title", table.title()}, {"columns", table.column_names()}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::string model_to_json(const LinearModel& model) {
    const auto& m = model.training_meta;
    json doc = {
        {"coef_latency", model.coef_latency},
        {"coef_rate", model.coef_rate},
        {"intercept", model.intercept},
        {"training_meta",
         {{"rates", m.rates},
          {"ts_start", m.ts_start},
          {"ts_end_exclusive", m.ts_end_exclusive},
          {"ts_step", m.ts_step},
          {"sample_count", m.sample_count}}},
    };
    return doc.dump(2) + "\n";
}

namespace {

double number_field(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw IoError(std::string("model file: missing key '") + key + "' in " + where);
    }
    if (!it->is_number()) {
        throw IoError(std::string("model file: '") + key + "' must be a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw IoError(std::string("model file: '") + key + "' is not finite");
    return v;
}

}  // namespace

LinearModel model_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("model file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw IoError("model file: top level must be an object");

    LinearModel model;
    model.coef_latency = number_field(doc, "coef_latency", "model");
    model.coef_rate = number_field(doc, "coef_rate", "model");
    model.intercept = number_field(doc, "intercept", "model");

    auto meta_it = doc.find("training_meta");
    if (meta_it == doc.end() || !meta_it->is_object()) {
        throw IoError("model file: 'training_meta' must be an object");
    }
    const json& meta = *meta_it;
    auto& m = model.training_meta;
    auto rates_it = meta.find("rates");
    if (rates_it == meta.end() || !rates_it->is_array()) {
        throw IoError("model file: 'training_meta.rates' must be an array");
    }
    for (const auto& r : *rates_it) {
        if (!r.is_number()) throw IoError("model file: 'training_meta.rates' must hold numbers");
        m.rates.push_back(r.get<double>());
    }
    m.ts_start = number_field(meta, "ts_start", "training_meta");
    m.ts_end_exclusive = number_field(meta, "ts_end_exclusive", "training_meta");
    m.ts_step = number_field(meta, "ts_step", "training_meta");
    auto count_it = meta.find("sample_count");
    if (count_it == meta.end() || !count_it->is_number_unsigned()) {
        throw IoError("model file: 'training_meta.sample_count' must be a non-negative integer");
    }
    m.sample_count = count_it->get<std::size_t>();
    if (m.sample_count <= kParameterCount) {
        throw IoError("model file: sample_count must exceed the parameter count");
    }
    return model;
}

std::string trace_to_csv(const AdaptationTrace& trace) {
    std::string out = "step,ts_bits,latency_ms,threshold_event\n";
    for (const auto& r : trace.records) {
        out += std::to_string(r.step);
        out += ',';
        out += std::to_string(r.ts_bits);
        out += ',';
        out += format_number(r.latency_ms);
        out += r.threshold_event ? ",1\n" : ",0\n";
    }
    return out;
}

std::string trace_to_json(const AdaptationTrace& trace) {
    const auto& p = trace.params;
    json slopes = json::array();
    for (const auto& [rate, slope] : p.slope_model().entries()) {
        slopes.push_back({{"data_rate_mbps", rate}, {"slope_ms_per_bit", slope}});
    }
    json meta = {
        {"target_latency_ms", p.target_latency_ms()},
        {"data_rate_mbps", p.data_rate_mbps()},
        {"initial_offset_bits", p.initial_offset_bits()},
        {"increase_step_bits", p.increase_step_bits()},
        {"decrease_step_bits", p.decrease_step_bits()},
        {"max_threshold_events", p.max_threshold_events()},
        {"min_ts_bits", p.min_ts_bits()},
        {"slope_model", slopes},
        {"start_ts_bits", trace.start_ts_bits},
        {"start_clamped", trace.start_clamped},
        {"clamped_during_run", trace.clamped_during_run},
    };
    json records = json::array();
    for (const auto& r : trace.records) {
        records.push_back({{"step", r.step},
                           {"ts_bits", r.ts_bits},
                           {"latency_ms", r.latency_ms},
                           {"threshold_event", r.threshold_event}});
    }
    json doc = {{"meta", meta}, {"records", records}};
    return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace uavchan::io
