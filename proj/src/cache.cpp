#include "hypercount/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hypercount {

using nlohmann::json;

std::string class_group_to_json(const ClassGroup& G) {
    json doc;
    doc["d"] = G.disc();
    doc["forms"] = json::array();
    for (const auto& f : G.forms()) doc["forms"].push_back({f.a, f.b, f.c});
    doc["table"] = G.table();
    doc["generators"] = json::array();
    for (const auto& g : G.generators()) doc["generators"].push_back({g.index, g.order});
    return doc.dump();
}

ClassGroup class_group_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        std::vector<QuadForm> forms;
        for (const auto& f : doc.at("forms")) forms.push_back({f.at(0).get<i64>(), f.at(1).get<i64>(), f.at(2).get<i64>()});
        auto table = doc.at("table").get<std::vector<std::vector<std::size_t>>>();
        std::vector<ClassGroup::Generator> gens;
        for (const auto& g : doc.at("generators")) gens.push_back({g.at(0).get<std::size_t>(), g.at(1).get<std::size_t>()});
        return ClassGroup(doc.at("d").get<i64>(), std::move(forms), std::move(table), std::move(gens));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("class group JSON: ") + e.what());
    }
}

std::filesystem::path cache_directory(const std::optional<std::filesystem::path>& fallback) {
    if (const char* env = std::getenv("HYPERCOUNT_CACHE"); env && *env) return env;
    if (fallback) return *fallback;
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "hypercount";
    return ".hypercount-cache";
}

namespace {

std::optional<std::string> slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Write to a temporary and rename so readers never see a partial file.
void store(const std::filesystem::path& p, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    const auto tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return; // caching is best effort
        out << text;
    }
    std::filesystem::rename(tmp, p, ec);
}

std::string sanitize(std::string id) {
    for (char& c : id)
        if (c == ':' || c == ',') c = '_';
    return id;
}

} // namespace

std::shared_ptr<const ClassGroup> Cache::class_group(i64 d) const {
    const auto path = dir_ / ("classgroup_" + std::to_string(-d) + ".json");
    if (auto text = slurp(path)) {
        try {
            auto G = std::make_shared<const ClassGroup>(class_group_from_json(*text));
            if (G->disc() == d) return G;
        } catch (const std::invalid_argument&) {
            // stale or corrupt entry: rebuild below
        }
    }
    auto G = std::make_shared<const ClassGroup>(d);
    store(path, class_group_to_json(*G));
    return G;
}

ThetaCoefficients Cache::theta(const ClassCharacter& chi, i64 N) const {
    const i64 d = chi.group().disc();
    const auto path = dir_ / ("theta_" + std::to_string(-d) + "_" + sanitize(chi.id()) + "_" + std::to_string(N) + ".csv");
    if (auto text = slurp(path)) {
        std::istringstream in(*text);
        std::string line;
        ThetaCoefficients t{d, chi.id(), N, {}, 0};
        bool good = static_cast<bool>(std::getline(in, line)) && line == "n,lambda";
        while (good && std::getline(in, line)) {
            const auto comma = line.find(',');
            if (comma == std::string::npos) { good = false; break; }
            t.coeffs.push_back(std::stod(line.substr(comma + 1)));
        }
        if (good && static_cast<i64>(t.coeffs.size()) == N + 1) return t;
    }
    auto t = theta_coefficients(chi, N);
    std::ostringstream os;
    os << "n,lambda\n";
    char buf[64];
    for (std::size_t n = 0; n < t.coeffs.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%.17g", t.coeffs[n]);
        os << n << ',' << buf << '\n';
    }
    store(path, os.str());
    return t;
}

} // namespace hypercount
