#include "springchain/spec_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "springchain/error.hpp"

namespace springchain {
namespace {

using nlohmann::json;

// Collects top-level arrays of scalars as their literal source text.
class LiteralArraySax : public nlohmann::json_sax<json> {
public:
    std::map<std::string, std::vector<std::string>> arrays;

    bool null() override { return scalar("null"); }
    bool boolean(bool v) override { return scalar(v ? "true" : "false"); }
    // Integers are exact as parsed; floats keep their source text.
    bool number_integer(number_integer_t v) override { return scalar(std::to_string(v)); }
    bool number_unsigned(number_unsigned_t v) override { return scalar(std::to_string(v)); }
    bool number_float(number_float_t, const string_t& s) override { return scalar(s); }
    bool string(string_t& s) override { return scalar(s); }
    bool binary(binary_t&) override { return scalar(""); }

    bool start_object(std::size_t) override {
        if (depth_ == 0) root_is_object_ = true;
        ++depth_;
        return true;
    }
    bool end_object() override { return close(); }
    bool key(string_t& k) override {
        if (depth_ == 1) current_key_ = k;
        return true;
    }
    bool start_array(std::size_t) override {
        ++depth_;
        if (depth_ == 2 && current_key_) {
            collecting_ = true;
            arrays[*current_key_].clear();
        }
        return true;
    }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
        throw Error(ErrorCode::ParseError, "invalid JSON at byte " + std::to_string(position) + ": " + ex.what());
    }

    bool root_is_object() const { return root_is_object_; }

private:
    bool scalar(const std::string& text) {
        if (collecting_ && depth_ == 2) arrays[*current_key_].push_back(text);
        if (depth_ == 1) current_key_.reset();
        return true;
    }
    bool close() {
        --depth_;
        if (depth_ == 1) {
            collecting_ = false;
            current_key_.reset();
        }
        return true;
    }

    int depth_ = 0;
    bool collecting_ = false;
    bool root_is_object_ = false;
    std::optional<std::string> current_key_;
};

std::vector<Rational> to_rationals(const std::string& key, const std::vector<std::string>& items) {
    std::vector<Rational> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        try {
            out.push_back(parse_rational(item));
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, "key '" + key + "': " + e.what());
        }
    }
    return out;
}

LoadedSpec from_arrays(const std::map<std::string, std::vector<std::string>>& arrays) {
    LoadedSpec loaded;
    for (const char* required : {"masses", "stiffness", "damping"}) {
        if (!arrays.contains(required)) {
            throw Error(ErrorCode::ParseError, std::string("missing array '") + required + "'");
        }
    }
    loaded.raw.masses = to_rationals("masses", arrays.at("masses"));
    loaded.raw.stiffness = to_rationals("stiffness", arrays.at("stiffness"));
    loaded.raw.damping = to_rationals("damping", arrays.at("damping"));
    if (arrays.contains("natural_lengths")) {
        loaded.warnings.emplace_back(
            "natural_lengths ignored: the model uses displacements from equilibrium");
    }
    return loaded;
}

std::string strip_toml_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

LoadedSpec parse_spec_json(std::string_view text) {
    LiteralArraySax sax;
    json::sax_parse(text.begin(), text.end(), &sax);
    if (!sax.root_is_object()) throw Error(ErrorCode::ParseError, "spec document must be a JSON object");
    return from_arrays(sax.arrays);
}

LoadedSpec parse_spec_toml(std::string_view text) {
    // Only the subset a chain spec needs: `key = [ ... ]` arrays (possibly
    // spanning lines) of numbers or basic strings, plus comments.
    std::istringstream lines{std::string(text)};
    std::string joined;
    for (std::string line; std::getline(lines, line);) joined += strip_toml_comment(line) + "\n";

    std::map<std::string, std::vector<std::string>> arrays;
    static const std::regex kArray(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=\s*\[([^\]]*)\])");
    for (auto it = std::sregex_iterator(joined.begin(), joined.end(), kArray); it != std::sregex_iterator(); ++it) {
        const std::string key = (*it)[1];
        std::vector<std::string> items;
        std::stringstream body((*it)[2].str());
        for (std::string item; std::getline(body, item, ',');) {
            item = trim(item);
            if (item.empty()) continue;
            if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
            items.push_back(item);
        }
        if (arrays.contains(key)) throw Error(ErrorCode::ParseError, "duplicate key '" + key + "'");
        arrays.emplace(key, std::move(items));
    }
    return from_arrays(arrays);
}

LoadedSpec load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open spec file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".toml") return parse_spec_toml(buf.str());
    return parse_spec_json(buf.str());
}

std::string spec_to_json(const ChainSpec& spec) {
    auto strings = [](std::span<const Rational> values) {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(to_string(v));
        return arr;
    };
    json doc;
    doc["masses"] = strings(spec.masses());
    doc["stiffness"] = strings(spec.stiffness());
    doc["damping"] = strings(spec.damping());
    return doc.dump();
}

}  // namespace springchain
