#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace squint {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

class Rng;

// Scalar system parameters in SI units. Field names follow the usual
// hybrid-precoding symbols; the JSON keys are the same strings ("f_c", "N_t", ...).
struct SystemConfig {
    double f_c = 300e9;        // carrier frequency, Hz
    double B = 30e9;           // bandwidth, Hz
    int K = 129;               // subcarriers (odd)
    int N_t = 256;             // transmit antennas
    int N_r = 4;               // receive antennas
    int N_RF = 4;              // RF chains
    int N_s = 4;               // streams
    int M = 16;                // TTDs per RF chain
    int N = 16;                // PSs per TTD
    double t_max = 340e-12;    // TTD delay budget, s
    double rho = 1.9952623149688795;  // linear SNR (3 dB)
    double tau_max = 20e-3;    // upper bound of the uniform path-delay draw, s
    std::uint64_t seed = 1;

    // Throws std::invalid_argument on the first violated invariant.
    void validate() const;
    // Non-fatal notes about the configuration (e.g. N_RF not << N_t).
    std::vector<std::string> warnings() const;

    // Dimensionless delay budget 2 f_c t_max.
    double theta_max() const { return 2.0 * f_c * t_max; }
};

double snr_from_db(double db);

// f_c + (B/K)(k-1-(K-1)/2), k in 1..K. Throws std::out_of_range.
double subcarrier_frequency(const SystemConfig& cfg, int k);

// f_k / f_c.
double zeta(const SystemConfig& cfg, int k);

// N B^2/f_c^2 (K^2-1)/(12K^2); the spread of zeta_k around 1 scaled by N.
double eta(const SystemConfig& cfg);

// Uniform steering vector with entries exp(-j pi n zeta psi)/sqrt(n_elems).
CVector steering_vector(int n_elems, double zeta_k, double psi);

// Transmit ULA response at subcarrier k for spatial direction psi, |psi| <= 1.
CVector ula_response(const SystemConfig& cfg, int k, double psi);

// URA on the yz-plane, v = v_y (x) v_z. n1 * n2 must equal cfg.N_t.
CVector ura_response(const SystemConfig& cfg, int k, double azimuth, double elevation,
                     int n1, int n2);

struct PathSet {
    std::vector<cdouble> alpha;        // complex gain
    std::vector<double> tau;           // delay, s
    std::vector<double> aod;           // azimuth of departure, rad
    std::vector<double> aoa;           // azimuth of arrival, rad
    std::vector<double> psi;           // transmit spatial direction sin(aod)
    std::vector<double> psi_rx;        // receive spatial direction sin(aoa)

    std::size_t size() const { return alpha.size(); }
    // Builds a path set from angles; directions are derived with elevation pi/2.
    static PathSet from_angles(std::vector<cdouble> alpha, std::vector<double> tau,
                               std::vector<double> aod, std::vector<double> aoa);
};

struct ChannelRealization {
    SystemConfig config;
    PathSet paths;
    std::vector<CMatrix> H;  // H[k-1] is N_r x N_t

    const CMatrix& at(int k) const { return H.at(static_cast<std::size_t>(k - 1)); }
};

// Materializes H_k = sqrt(N_r N_t / L) sum_l alpha_l e^{-j 2 pi tau_l f_k} u_{k,l} v_{k,l}^H.
ChannelRealization build_channel(const SystemConfig& cfg, PathSet paths);

// Random geometric channel with L = N_RF paths: angles uniform on [-pi/2, pi/2],
// CN(0,1) gains, delays uniform on [0, tau_max].
ChannelRealization sample_channel(const SystemConfig& cfg, Rng& rng);

}  // namespace squint
