#ifndef BOLLOBAS_BOLLOBAS_H
#define BOLLOBAS_BOLLOBAS_H

/* C interface to the Bollobas lab. Requests and reports are JSON strings;
   strings handed out by the library are released with bl_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define BL_API __attribute__((visibility("default")))
#else
#define BL_API
#endif

typedef struct bl_operator bl_operator;

typedef enum bl_status {
  BL_OK = 0,
  BL_ERR_INVALID = 1,
  BL_ERR_PARSE = 2,
  BL_ERR_GEOMETRY = 3,
  BL_ERR_UNKNOWN = 4,
  BL_ERR_CLAIM = 5,
  BL_ERR_DIMENSION = 6,
  BL_ERR_NOT_NORMALIZED = 7,
  BL_ERR_NOT_REALIZABLE = 8,
  BL_ERR_REFUSED = 9,
  BL_ERR_INTERNAL = 10
} bl_status;

BL_API const char* bl_version(void);
/* message of the last failed call on this thread, "" if none */
BL_API const char* bl_last_error(void);
BL_API void bl_string_free(char* s);
/* 0 restores the BOLLOBAS_LAB_THREADS default */
BL_API void bl_set_threads(int n);
BL_API int bl_threads(void);

/* dim > 0 replaces the dimension of every space in the spec (or the dim= of a gallery URI) */
BL_API bl_status bl_operator_from_json(const char* json, int dim, bl_operator** out);
BL_API bl_status bl_operator_from_uri(const char* uri, int dim, bl_operator** out);
BL_API void bl_operator_free(bl_operator* op);
BL_API bl_status bl_operator_describe(const bl_operator* op, char** out_json);
BL_API int bl_operator_domain_dim(const bl_operator* op);
BL_API int bl_operator_range_dim(const bl_operator* op);
/* y = T x; x_im and y_im may be NULL for real data */
BL_API bl_status bl_operator_apply(const bl_operator* op, const double* x_re, const double* x_im, int n, double* y_re,
                                   double* y_im, int m);

/* options: {"seed", "restarts", "iterations", "norming_set": bool} */
BL_API bl_status bl_norm(const bl_operator* op, const char* options_json, char** out_json);
/* options: {"seed", "restarts", "iterations", "attaining": bool} */
BL_API bl_status bl_numerical_radius(const bl_operator* op, const char* options_json, char** out_json);

/* {"predicate": "diag_norm" | "diag_nu" | "diag_mixed" | "projection" | "functional",
    "spec", "family", "from", "to", "N", "mode", "field", "materialize": [dims]} */
BL_API bl_status bl_member(const char* request_json, char** out_json);

/* {"eps": [..], "mode": "norm" | "nu", "seed", "restarts", "iterations", "format": "csv" | "json", "header": bool} */
BL_API bl_status bl_probe(const bl_operator* op, const char* request_json, char** out);
/* {"eta", "eps": [..], "mode", "seed", "restarts", "iterations"} */
BL_API bl_status bl_validate(const bl_operator* op, const char* request_json, char** out_json);
BL_API const char* bl_probe_csv_header(void);

BL_API bl_status bl_gallery_ids(char** out_json);
/* {"dims": [..], "p", "alpha", "ell", "seed"}; the report's "pass" says whether every claim held */
BL_API bl_status bl_gallery_run(const char* id, const char* request_json, char** out_json);

/* {"direction": "lift_nu_to_norm" | "norm_to_lift_nu" | "adjoint" | "c0_adjoint_nu" | "rank1_l1" | "psum" | "corner", ...} */
BL_API bl_status bl_transfer(const char* request_json, char** out_json);

/* {"space": {"p", "field"}, "eps": [..]} */
BL_API bl_status bl_moduli(const char* request_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
