#pragma once

#include "toda/report.hpp"

namespace toda {

struct AcceptanceOptions {
    unsigned seed = 12345;
    bool quick = false;  // smaller windows/horizons for smoke runs
    int threads = 0;
};

// The acceptance criteria, one function per numbered criterion; each appends
// its named checks to the report.
void check_dispersion_identities(Report& r);                        // 1
void check_lambda_consistency(Report& r);                           // 2
void check_im_omega(Report& r);                                     // 3
void check_jost_lax_residuals(Report& r);                           // 4
void check_mode_identities(Report& r);                              // 5
void check_gram_expansions(Report& r);                              // 6
void check_darboux_kernels(Report& r);                              // 7
void check_mode_operator_identities(Report& r);                                    // 8
void check_free_oracle(Report& r, const AcceptanceOptions& o);      // 9
void check_growth_bound(Report& r, const AcceptanceOptions& o);     // 10
void check_secular_decay(Report& r);                                // 11
void check_projected_decay(Report& r, const AcceptanceOptions& o);  // 12
void check_correspondence(Report& r, const AcceptanceOptions& o);   // 13
void check_profile(Report& r, const AcceptanceOptions& o);          // 14

Report run_acceptance(const AcceptanceOptions& opts);

}  // namespace toda
