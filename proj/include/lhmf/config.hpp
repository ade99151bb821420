#pragma once

// Runtime configuration and the engine's output record.

#include <lhmf/exact.hpp>
#include <lhmf/quadform.hpp>

#include <sstream>

namespace lhmf {

struct Config {
    int precision = 15;          // working decimal digits (double pipeline)
    double quad_tol = 1e-8;      // target absolute quadrature tolerance
    int matrix_bound = 400;      // Poincare shell truncation (max |entry|)
    int series_terms = 64;       // q-expansion order
    long long orbit_bound = 0;   // f_{k,P} fiber bound; 0 = choose automatically
    double pole_guard = 1e-3;
    std::string cache_dir;
    std::string format = "pretty";  // csv | json | pretty
    int output_decimals = 5;
    bool full_precision = false;
    int jobs = 1;

    std::string canonical() const {
        std::ostringstream os;
        os << precision << '|' << quad_tol << '|' << matrix_bound << '|' << series_terms << '|' << orbit_bound << '|'
           << pole_guard << '|' << output_decimals;
        return os.str();
    }

    // FNV-1a of the canonical form; echoed into every output record
    std::string hash() const {
        unsigned long long h = 1469598103934665603ull;
        for (unsigned char ch : canonical()) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        std::ostringstream os;
        os << std::hex << h;
        return os.str();
    }
};

struct PeriodResult {
    int k = 2, n = 0;
    QuadForm form;
    bool has_exact = false;
    ExactNumber exact;        // meaningful when has_exact
    Cplx numeric{0, 0};
    double err = 0;
    bool cpv = false;         // finite-part regularization engaged on the contour
    std::string method;       // quadrature/truncation flags
    std::string config_hash;

    // "rational" (y=z=0, x=0), "i-rational" (w=x=z=0), else "field"
    std::string exact_kind() const {
        if (!has_exact) return "";
        if (exact.is_rational()) return "rational";
        if (exact.is_i_rational()) return "i-rational";
        return "field";
    }
};

}  // namespace lhmf
