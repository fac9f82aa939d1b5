/* Convex-feasibility solver: C interface.
 *
 * Every fallible call returns a feasdr_status; FEASDR_OK means success, and
 * anything else leaves a human-readable message in feasdr_last_error() for
 * the calling thread. Handles returned through out-parameters are owned by
 * the caller and released with the matching _free function. Out-parameters
 * are written only on success.
 */
#ifndef FEASDR_H
#define FEASDR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum feasdr_status {
    FEASDR_OK = 0,
    FEASDR_ERR_INVALID_ARGUMENT = 1,
    FEASDR_ERR_DIMENSION_MISMATCH = 2,
    FEASDR_ERR_NOT_FINITE = 3,
    FEASDR_ERR_PARSE = 4,
    FEASDR_ERR_IO = 5,
    FEASDR_ERR_INTERNAL = 6
} feasdr_status;

typedef struct feasdr_problem feasdr_problem;
typedef struct feasdr_run feasdr_run;

/* Message describing the most recent failure on the calling thread. Never
 * NULL; empty string if no failure has occurred yet. */
const char* feasdr_last_error(void);

/* ---------------- problems ---------------- */

/* Loads a JSON problem file. */
feasdr_status feasdr_problem_load(const char* path, feasdr_problem** out);

/* Parses a JSON problem from memory. */
feasdr_status feasdr_problem_parse(const char* json_text, feasdr_problem** out);

/* Builds a synthetic instance from a spec string such as
 * "polytope:5x10:slack=0.3", "ball_box_mix:3x2,2:slack=0.25",
 * "lines_through_point:2x3", or "explicit:path.json". */
feasdr_status feasdr_problem_generate(const char* spec, uint64_t seed,
                                      feasdr_problem** out);

feasdr_status feasdr_problem_save(const feasdr_problem* problem, const char* path);
void feasdr_problem_free(feasdr_problem* problem);

/* Dimension / set count; 0 on a NULL handle. */
int feasdr_problem_dim(const feasdr_problem* problem);
int feasdr_problem_set_count(const feasdr_problem* problem);

/* 1 when the instance carries a certified common point. */
int feasdr_problem_has_certified_point(const feasdr_problem* problem);

/* Copies the certified point into out (len must equal the dimension). */
feasdr_status feasdr_problem_certified_point(const feasdr_problem* problem, double* out,
                                             size_t len);

/* Largest distance from x to any of the problem's sets. */
feasdr_status feasdr_problem_residual(const feasdr_problem* problem, const double* x,
                                      size_t len, double* out);

/* Projects x onto one set (0-based index); out has the same length. */
feasdr_status feasdr_problem_project(const feasdr_problem* problem, int set_index,
                                     const double* x, size_t len, double* out);

/* ---------------- solving ---------------- */

typedef struct feasdr_solve_options {
    /* One of: sa-dr, bi-dr, rset-dr, cyclic-dr, sdr, pocs. */
    const char* algorithm;
    /* Index groups "1,2,3;4,5" with 1-based indices. NULL or empty selects
     * the default single group covering every set. Only sa-dr and bi-dr
     * accept a plan. */
    const char* plan;
    /* Weights: a flat comma list for sa-dr (one weight per string), rset-dr
     * (one per prefix length), and sdr (one per pair); semicolon-separated
     * groups for bi-dr (one group per block). NULL or empty means equal. */
    const char* weights;
    /* Start point; NULL means the origin. */
    const double* x0;
    size_t x0_len;
    double residual_tol;
    double step_tol;
    long max_iters;
    long trace_stride;
} feasdr_solve_options;

/* Fills in the defaults: algorithm "sa-dr", no plan/weights/x0, residual_tol
 * 1e-8, step_tol 1e-12, max_iters 100000, trace_stride 1. */
void feasdr_solve_options_init(feasdr_solve_options* opts);

feasdr_status feasdr_solve(const feasdr_problem* problem,
                           const feasdr_solve_options* opts, feasdr_run** out);

/* ---------------- runs ---------------- */

void feasdr_run_free(feasdr_run* run);
long feasdr_run_iterations(const feasdr_run* run);

/* "residual_tol", "step_tol", or "max_iters"; "" on a NULL handle. */
const char* feasdr_run_stop_reason(const feasdr_run* run);

double feasdr_run_final_residual(const feasdr_run* run);
feasdr_status feasdr_run_final_point(const feasdr_run* run, double* out, size_t len);

/* Writes the CSV trace to path and a JSON sidecar to path + ".meta.json";
 * algorithm/plan/seed are recorded verbatim in the sidecar. */
feasdr_status feasdr_run_save(const feasdr_run* run, const char* algorithm,
                              const char* plan, uint64_t seed, const char* path);

/* ---------------- verification & comparison ---------------- */

/* Runs a property suite ("geometry", "operators", "algorithms", or "all")
 * and stores the number of failed checks in *failures. verbose != 0 prints
 * one line per check to stdout. */
feasdr_status feasdr_verify(const char* suite, uint64_t seed, int verbose,
                            int* failures);

/* Largest per-row deviation between two saved CSV traces (see the run-trace
 * format); NaN entries compare equal to NaN. */
feasdr_status feasdr_compare_runs(const char* path_a, const char* path_b,
                                  double* max_deviation);

#ifdef __cplusplus
}
#endif

#endif /* FEASDR_H */
