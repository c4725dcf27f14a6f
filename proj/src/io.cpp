#include "endo/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace endo {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

long get_long(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw parse_error(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<long>();
}

std::string get_scalar_string(const json& j, const std::string& where) {
    if (!j.is_string())
        throw parse_error("expected a scalar string at " + where);
    return j.get<std::string>();
}

bool is_prime_label(const std::string& s) {
    if (s.empty() || s.size() > 18) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    long v = std::stol(s);
    if (v < 2) return false;
    for (long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

ClassicalPoint point_from(const json& j) {
    if (!j.is_object()) throw parse_error("point: expected a JSON object");
    long p = get_long(j, "p");
    long n_digits = get_long(j, "N");
    CtxPtr ctx;
    try {
        ctx = PrecisionCtx::make(p, static_cast<int>(n_digits));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("point: ") + e.what());
    }

    ClassicalPoint pt;
    pt.ctx = ctx;
    pt.n = static_cast<int>(get_long(j, "n"));

    if (!j.contains("weight") || !j["weight"].is_array())
        throw parse_error("point: missing weight array");
    for (const auto& w : j["weight"]) {
        if (!w.is_number_integer()) throw parse_error("point: weight entries must be integers");
        pt.weight.k.push_back(w.get<long>());
    }

    if (!j.contains("refinement") || !j["refinement"].is_array())
        throw parse_error("point: missing refinement array");
    for (const auto& r : j["refinement"])
        pt.refinement.phi.push_back(parse_scalar(ctx, get_scalar_string(r, "refinement")));

    if (j.contains("satake")) {
        if (!j["satake"].is_object()) throw parse_error("point: satake must be an object");
        for (const auto& [place, vals] : j["satake"].items()) {
            if (!is_prime_label(place))
                throw parse_error("point: satake place '" + place + "' is not a prime label");
            if (!vals.is_array())
                throw parse_error("point: satake values at '" + place + "' must be an array");
            SatakeParams s;
            s.place = place;
            for (const auto& v : vals)
                s.values.push_back(parse_scalar(ctx, get_scalar_string(v, "satake." + place)));
            pt.satake.emplace(place, std::move(s));
        }
    }

    if (j.contains("mu_frob")) {
        if (!j["mu_frob"].is_object()) throw parse_error("point: mu_frob must be an object");
        for (const auto& [place, v] : j["mu_frob"].items()) {
            if (place != "p" && !is_prime_label(place))
                throw parse_error("point: mu_frob place '" + place + "' is not a prime label");
            pt.mu.frob.emplace(place, parse_scalar(ctx, get_scalar_string(v, "mu_frob." + place)));
        }
    }

    try {
        validate_point(pt);
    } catch (const parse_error&) {
        throw;
    }
    return pt;
}

json point_to(const ClassicalPoint& pt) {
    json j;
    j["n"] = pt.n;
    j["p"] = pt.ctx->p();
    j["N"] = pt.ctx->digits();
    j["weight"] = pt.weight.k;
    json refinement = json::array();
    for (const auto& v : pt.refinement.phi) refinement.push_back(to_string(v));
    j["refinement"] = std::move(refinement);
    json satake = json::object();
    for (const auto& [place, s] : pt.satake) {
        json vals = json::array();
        for (const auto& v : s.values) vals.push_back(to_string(v));
        satake[place] = std::move(vals);
    }
    j["satake"] = std::move(satake);
    json mu = json::object();
    for (const auto& [place, v] : pt.mu.frob) mu[place] = to_string(v);
    j["mu_frob"] = std::move(mu);
    return j;
}

}  // namespace

ClassicalPoint point_from_json(const std::string& text) { return point_from(parse_json(text)); }

std::string point_to_json(const ClassicalPoint& pt) { return point_to(pt).dump(2) + "\n"; }

std::pair<ClassicalPoint, ClassicalPoint> pair_from_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("z1") || !j.contains("z2"))
        throw parse_error("pair: expected an object with fields z1 and z2");
    ClassicalPoint z1 = point_from(j["z1"]);
    ClassicalPoint z2 = point_from(j["z2"]);
    if (!same_ctx(*z1.ctx, *z2.ctx))
        throw parse_error("pair: z1 and z2 carry different precision contexts");
    return {std::move(z1), std::move(z2)};
}

FiniteModule module_from_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw parse_error("module: expected a JSON object");
    long p = get_long(j, "p");
    long n_digits = get_long(j, "N");
    CtxPtr ctx;
    try {
        ctx = PrecisionCtx::make(p, static_cast<int>(n_digits));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("module: ") + e.what());
    }
    int dim = static_cast<int>(get_long(j, "dim"));
    if (dim < 0) throw parse_error("module: dim must be >= 0");

    if (!j.contains("ops") || !j["ops"].is_object())
        throw parse_error("module: missing ops object");
    std::map<std::string, Matrix> ops;
    for (const auto& [label, arr] : j["ops"].items()) {
        if (!arr.is_array() || static_cast<int>(arr.size()) != dim * dim)
            throw parse_error("module: operator '" + label + "' must list dim*dim scalars");
        Matrix m(ctx, dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k)
                m.at(i, k) =
                    parse_scalar(ctx, get_scalar_string(arr[static_cast<size_t>(i * dim + k)],
                                                        "ops." + label));
        ops.emplace(label, std::move(m));
    }

    std::set<std::string> subs;
    if (j.contains("sub_labels")) {
        if (!j["sub_labels"].is_array()) throw parse_error("module: sub_labels must be an array");
        for (const auto& s : j["sub_labels"]) {
            if (!s.is_string()) throw parse_error("module: sub_labels entries must be strings");
            subs.insert(s.get<std::string>());
        }
    }

    try {
        return FiniteModule::make(ctx, dim, std::move(ops), std::move(subs));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("module: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    out << content;
}

}  // namespace endo
