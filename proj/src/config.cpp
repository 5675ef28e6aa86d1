#include "wavescat/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wavescat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a real number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        // allow scientific notation for particle counts like 1e6
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        const auto i = static_cast<std::int64_t>(std::llround(v));
        if (std::abs(v - static_cast<double>(i)) > 1e-9 * std::max(1.0, std::abs(v)))
            throw std::invalid_argument("not an integer");
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key, "expected a boolean, got '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

Vec3 parse_vec3(const std::string& key, const std::string& value) {
    const auto parts = split(value, ',');
    if (parts.size() != 3) throw ConfigError(key, "expected three comma-separated components");
    return {parse_double(key, parts[0]), parse_double(key, parts[1]), parse_double(key, parts[2])};
}

Formulation parse_formulation(const std::string& key, const std::string& value) {
    const std::string v = lower(value);
    if (v == "ori") return Formulation::ORI;
    if (v == "red") return Formulation::RED;
    if (v == "ie") return Formulation::IE;
    throw ConfigError(key, "unknown formulation '" + value + "' (expected ORI, RED or IE)");
}

}  // namespace

Cplx parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    auto parse_part = [](const std::string& part) {
        std::size_t pos = 0;
        const double v = std::stod(part, &pos);
        if (pos != part.size()) throw std::invalid_argument("trailing characters in '" + part + "'");
        return v;
    };

    if (s.back() != 'i' && s.back() != 'I') return {parse_part(s), 0.0};

    std::string body = s.substr(0, s.size() - 1);
    // split "re+im" at the last +/- that is not an exponent sign or leading
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    if (cut == std::string::npos) {
        if (body.empty() || body == "+" || body == "-") body += "1";
        return {0.0, parse_part(body)};
    }
    std::string im = body.substr(cut);
    if (im == "+" || im == "-") im += "1";
    return {parse_part(body.substr(0, cut)), parse_part(im)};
}

std::string format_complex(Cplx z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.hash = fnv1a(text);

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError(key, "empty value");

        try {
            if (key == "v") {
                cfg.v = parse_double(key, value);
                cfg.v_given = true;
            } else if (key == "f") {
                cfg.f = parse_double(key, value);
                cfg.f_given = true;
            } else if (key == "k") cfg.k_explicit = parse_double(key, value);
            else if (key == "c_s" || key == "cs") cfg.c_s = parse_double(key, value);
            else if (key == "kappa") cfg.kappa = parse_double(key, value);
            else if (key == "n") cfg.big_n = parse_double(key, value);
            else if (key == "n0") cfg.n0 = parse_complex(value);
            else if (key == "n_target") cfg.n_target = parse_complex(value);
            else if (key == "h") cfg.h_explicit = parse_complex(value);
            else if (key == "alpha") cfg.alpha = parse_vec3(key, value);
            else if (key == "domain_side") cfg.domain_side = parse_double(key, value);
            else if (key == "m" || key == "particles") cfg.particles = parse_int(key, value);
            else if (key == "b") cfg.b = static_cast<int>(parse_int(key, value));
            else if (key == "p_side") cfg.p_side = static_cast<int>(parse_int(key, value));
            else if (key == "c_side") cfg.c_side = static_cast<int>(parse_int(key, value));
            else if (key == "formulations") {
                cfg.formulations.clear();
                for (const auto& part : split(value, ','))
                    if (!part.empty()) cfg.formulations.push_back(parse_formulation(key, part));
            } else if (key == "tol") cfg.tol = parse_double(key, value);
            else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_int(key, value));
            else if (key == "restart") cfg.restart = static_cast<int>(parse_int(key, value));
            else if (key == "precision") {
                const std::string p = lower(value);
                if (p == "single") cfg.precision = Precision::Single;
                else if (p == "double") cfg.precision = Precision::Double;
                else throw ConfigError(key, "expected 'single' or 'double', got '" + value + "'");
            } else if (key == "pad") {
                const std::string p = lower(value);
                if (p == "exact") cfg.pad = PadMode::Exact;
                else if (p == "friendly") cfg.pad = PadMode::Friendly;
                else throw ConfigError(key, "expected 'exact' or 'friendly', got '" + value + "'");
            } else if (key == "outdir") cfg.outdir = value;
            else if (key == "report_grid") {
                cfg.report_ticks.clear();
                for (const auto& part : split(value, ','))
                    if (!part.empty()) cfg.report_ticks.push_back(parse_double(key, part));
            } else if (key == "im_h_threshold") cfg.im_h_threshold = parse_double(key, value);
            else if (key == "allow_positive_im_h") cfg.allow_positive_im_h = parse_bool(key, value);
            else throw ConfigError(key, "unknown key");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(key, e.what());
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

double config_k(const ExperimentConfig& cfg) {
    const double derived = 2.0 * std::numbers::pi * cfg.f / cfg.v;
    if (cfg.k_explicit) {
        if (!(*cfg.k_explicit > 0.0)) throw ConfigError("k", "must be positive");
        if (!cfg.v_given && !cfg.f_given) return *cfg.k_explicit;
        // Tolerate the displayed-precision rounding of published parameter
        // lists (about 3e-6 relative for six significant digits) while still
        // catching transcription errors. The derived value wins: it carries
        // the full precision the rounded listing lost.
        if (std::abs(*cfg.k_explicit - derived) > 1e-5 * std::abs(derived)) {
            std::ostringstream os;
            os << "explicit k = " << *cfg.k_explicit << " disagrees with 2*pi*f/v = " << derived;
            throw ConfigError("k", os.str());
        }
        return derived;
    }
    return derived;
}

MaterialSpec make_material(const ExperimentConfig& cfg) {
    MaterialSpec spec;
    spec.k = config_k(cfg);
    spec.c_s = cfg.c_s;
    spec.kappa = cfg.kappa;
    spec.big_n = cfg.big_n;
    spec.n0 = cfg.n0;
    spec.alpha = cfg.alpha;
    spec.im_h_threshold = cfg.im_h_threshold;
    spec.allow_positive_im_h = cfg.allow_positive_im_h;
    if (cfg.h_explicit) {
        spec.h = *cfg.h_explicit;
    } else if (cfg.n_target) {
        spec.h = h_from_target_n(*cfg.n_target, spec);
    } else {
        spec.h = Cplx{0.0, 0.0};
    }
    validate(spec);
    return spec;
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.v > 0.0)) throw ConfigError("v", "wave speed must be positive");
    if (!(cfg.f > 0.0)) throw ConfigError("f", "frequency must be positive");
    if (!(cfg.domain_side > 0.0)) throw ConfigError("domain_side", "must be positive");
    if (!(cfg.kappa >= 0.0 && cfg.kappa < 1.0)) throw ConfigError("kappa", "must lie in [0,1)");
    if (!(cfg.c_s > 0.0)) throw ConfigError("c_s", "must be positive");
    if (!(cfg.big_n >= 0.0)) throw ConfigError("n", "particle density must be nonnegative");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol", "must be positive");
    if (cfg.max_iter < 1) throw ConfigError("max_iter", "must be at least 1");
    if (cfg.restart < 1) throw ConfigError("restart", "must be at least 1");
    if (cfg.p_side < 1) throw ConfigError("p_side", "must be at least 1");
    if (cfg.c_side < 1) throw ConfigError("c_side", "must be at least 1");
    if (cfg.formulations.empty()) throw ConfigError("formulations", "at least one of ORI, RED, IE is required");
    if (cfg.outdir.empty()) throw ConfigError("outdir", "must not be empty");
    if (cfg.report_ticks.empty()) throw ConfigError("report_grid", "needs at least one tick");
    for (double t : cfg.report_ticks)
        if (t < 0.0 || t > cfg.domain_side)
            throw ConfigError("report_grid", "tick " + std::to_string(t) + " outside the domain");
    if (cfg.h_explicit && cfg.n_target) {
        // both would silently shadow each other; insist on one source of truth
        const bool default_target = std::abs(*cfg.n_target - Cplx{-1.0, 0.001}) == 0.0;
        if (!default_target)
            throw ConfigError("h", "give either h or n_target, not both");
    }
    if (cfg.particles && cfg.b) {
        const std::int64_t bb = *cfg.b;
        if (bb * bb * bb != *cfg.particles) throw ConfigError("b", "b^3 does not equal M");
    }
    const bool wants_ori =
        std::find(cfg.formulations.begin(), cfg.formulations.end(), Formulation::ORI) != cfg.formulations.end();
    if (wants_ori && !cfg.particles && !cfg.b)
        throw ConfigError("m", "the particle formulation needs M or b");
    if (cfg.k_explicit) config_k(cfg);  // cross-check
}

}  // namespace wavescat
