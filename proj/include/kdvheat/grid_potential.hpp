// Periodic hermitian matrix potentials on a uniform grid. Potentials enter
// as Fourier mode lists (upper triangle including the diagonal), get
// synthesized to collocation samples, and are validated on construction.
#pragma once

#include <json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kdvheat {

inline constexpr double kHermiticityTol = 1e-12;

struct FourierMode {
    int row = 0;
    int col = 0;
    int wavenumber = 0;
    std::complex<double> amplitude;
};

struct PotentialSpec {
    int rank = 1;
    double length = 0.0;
    std::vector<FourierMode> modes;

    int bandwidth() const {
        int b = 0;
        for (const auto& mode : modes) b = std::max(b, std::abs(mode.wavenumber));
        return b;
    }
};

namespace detail {

inline int require_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument(std::string("potential file: missing or non-integer \"") +
                                    key + "\" in " + j.dump());
    return j.at(key).get<int>();
}

inline double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::invalid_argument(std::string("potential file: missing or non-numeric \"") +
                                    key + "\" in " + j.dump());
    return j.at(key).get<double>();
}

}  // namespace detail

inline PotentialSpec potential_spec_from_json(const nlohmann::json& j) {
    PotentialSpec spec;
    spec.rank = detail::require_int(j, "r");
    if (spec.rank < 1) throw std::invalid_argument("potential file: \"r\" must be >= 1");
    spec.length = detail::require_number(j, "length");
    if (!(spec.length > 0)) throw std::invalid_argument("potential file: \"length\" must be > 0");
    if (!j.contains("modes") || !j.at("modes").is_array())
        throw std::invalid_argument("potential file: missing \"modes\" array");
    for (const auto& rec : j.at("modes")) {
        FourierMode mode;
        mode.row = detail::require_int(rec, "i");
        mode.col = detail::require_int(rec, "j");
        mode.wavenumber = detail::require_int(rec, "k");
        mode.amplitude = {detail::require_number(rec, "re"), detail::require_number(rec, "im")};
        if (mode.row < 0 || mode.col < 0 || mode.row >= spec.rank || mode.col >= spec.rank)
            throw std::invalid_argument("potential file: mode indices out of range in " +
                                        rec.dump());
        if (mode.row > mode.col)
            throw std::invalid_argument(
                "potential file: modes must address the upper triangle (i <= j), got " +
                rec.dump());
        spec.modes.push_back(mode);
    }
    return spec;
}

inline nlohmann::json to_json(const PotentialSpec& spec) {
    nlohmann::json modes = nlohmann::json::array();
    for (const auto& mode : spec.modes)
        modes.push_back({{"i", mode.row},
                         {"j", mode.col},
                         {"k", mode.wavenumber},
                         {"re", mode.amplitude.real()},
                         {"im", mode.amplitude.imag()}});
    return {{"r", spec.rank}, {"length", spec.length}, {"modes", std::move(modes)}};
}

// Samples of U at the collocation points x_m = m * length / N, hermitian at
// every point.
class GridPotential {
  public:
    GridPotential(int rank, double length, std::vector<Eigen::MatrixXcd> samples)
        : rank_(rank), length_(length), samples_(std::move(samples)) {
        if (rank_ < 1) throw std::invalid_argument("grid potential: rank must be >= 1");
        if (!(length_ > 0)) throw std::invalid_argument("grid potential: length must be > 0");
        const int n = num_points();
        if (n < 16 || n % 2 != 0)
            throw std::invalid_argument("grid potential: need an even number of points >= 16, got " +
                                        std::to_string(n));
        for (const auto& s : samples_) {
            if (s.rows() != rank_ || s.cols() != rank_)
                throw std::invalid_argument("grid potential: sample size does not match rank");
            if ((s - s.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol)
                throw std::invalid_argument("grid potential: sample is not hermitian to 1e-12");
        }
    }

    int rank() const { return rank_; }
    double length() const { return length_; }
    int num_points() const { return static_cast<int>(samples_.size()); }
    double spacing() const { return length_ / num_points(); }
    const std::vector<Eigen::MatrixXcd>& samples() const { return samples_; }

  private:
    int rank_;
    double length_;
    std::vector<Eigen::MatrixXcd> samples_;
};

// Evaluate the mode list at the grid points. Only the upper triangle is
// specified; the lower triangle comes from conjugate symmetry, and the
// diagonal must come out real (its k and -k entries must pair up).
inline GridPotential synthesize(const PotentialSpec& spec, int num_points) {
    const int r = spec.rank;
    std::vector<Eigen::MatrixXcd> samples(static_cast<std::size_t>(std::max(num_points, 0)),
                                          Eigen::MatrixXcd::Zero(r, r));
    for (int m = 0; m < num_points; ++m) {
        const double x = spec.length * m / num_points;
        for (const auto& mode : spec.modes) {
            const double phase = 2.0 * M_PI * mode.wavenumber * x / spec.length;
            samples[m](mode.row, mode.col) +=
                mode.amplitude * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        for (int a = 0; a < r; ++a) {
            if (std::abs(samples[m](a, a).imag()) > kHermiticityTol)
                throw std::invalid_argument(
                    "potential synthesis: diagonal entry (" + std::to_string(a) + "," +
                    std::to_string(a) + ") is not real; its k and -k modes must be conjugate");
            samples[m](a, a) = samples[m](a, a).real();
            for (int b = a + 1; b < r; ++b) samples[m](b, a) = std::conj(samples[m](a, b));
        }
    }
    return GridPotential(r, spec.length, std::move(samples));
}

// The same potential shifted by x -> x + shift, applied exactly in mode
// space. Reference solution for the transport flow.
inline PotentialSpec translated(const PotentialSpec& spec, double shift) {
    PotentialSpec out = spec;
    for (auto& mode : out.modes) {
        const double phase = 2.0 * M_PI * mode.wavenumber * shift / spec.length;
        mode.amplitude *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return out;
}

}  // namespace kdvheat
