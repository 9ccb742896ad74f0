#include <bbvp/data_io.hpp>

#include <fstream>

#include <nlohmann/json.hpp>

namespace bbvp {

namespace {

std::vector<double> as_coeffs(const nlohmann::json& j) {
    if (!j.is_array()) throw std::runtime_error("boundary data: expected coefficient array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

} // namespace

BoundaryCoefficients read_boundary_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("boundary data: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("boundary data: parse failure in " + path + ": " + e.what());
    }
    for (const char* key : {"lmax", "gamma_prime", "H_prime", "k_prime", "tau_prime"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("boundary data: missing key ") + key);
    BoundaryCoefficients data;
    data.lmax = j["lmax"].get<int>();
    if (!j["gamma_prime"].is_array() || j["gamma_prime"].size() != 3)
        throw std::runtime_error("boundary data: gamma_prime needs three coefficient arrays");
    if (!j["tau_prime"].is_array() || j["tau_prime"].size() != 2)
        throw std::runtime_error("boundary data: tau_prime needs two coefficient arrays");
    for (int i = 0; i < 3; ++i) data.gamma_prime[i] = as_coeffs(j["gamma_prime"][i]);
    data.H_prime = as_coeffs(j["H_prime"]);
    data.k_prime = as_coeffs(j["k_prime"]);
    for (int i = 0; i < 2; ++i) data.tau_prime[i] = as_coeffs(j["tau_prime"][i]);
    data.validate();
    return data;
}

void write_boundary_coefficients(const BoundaryCoefficients& data, const std::string& path) {
    data.validate();
    nlohmann::ordered_json j;
    j["lmax"] = data.lmax;
    j["gamma_prime"] = {data.gamma_prime[0], data.gamma_prime[1], data.gamma_prime[2]};
    j["H_prime"] = data.H_prime;
    j["k_prime"] = data.k_prime;
    j["tau_prime"] = {data.tau_prime[0], data.tau_prime[1]};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("boundary data: cannot write " + path);
    out << j.dump(2) << '\n';
}

} // namespace bbvp
