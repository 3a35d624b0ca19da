#ifndef HGDECOMP_H
#define HGDECOMP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HGD_BUILDING_LIBRARY)
#define HGD_API __attribute__((visibility("default")))
#else
#define HGD_API
#endif

/* Opaque, immutable hypergraph handle. */
typedef struct hgd_hypergraph hgd_hypergraph;

typedef enum hgd_status {
  HGD_OK = 0,
  HGD_ERR_PARSE = 1,
  HGD_ERR_INVALID_ARGUMENT = 2,
  HGD_ERR_PRECONDITION = 3,
  HGD_ERR_BUDGET = 4,
  HGD_ERR_CAP = 5,
  HGD_ERR_IO = 6,
  HGD_ERR_INTERNAL = 7
} hgd_status;

typedef enum hgd_answer { HGD_YES = 0, HGD_NO = 1, HGD_FAIL = 2 } hgd_answer;

/* Message for the most recent failing call on this thread ("" if none). */
HGD_API const char* hgd_last_error(void);

/* Releases any string returned through a char** out parameter. */
HGD_API void hgd_string_free(char* s);

/* Hypergraphs. Text is the edge-list format; JSON is
   {"vertices":[...],"edges":[{"name":..,"vertices":[...]}]}. */
HGD_API hgd_status hgd_hypergraph_parse(const char* text, hgd_hypergraph** out);
HGD_API hgd_status hgd_hypergraph_from_json(const char* json, hgd_hypergraph** out);
HGD_API void hgd_hypergraph_free(hgd_hypergraph* h);
HGD_API hgd_status hgd_hypergraph_serialize(const hgd_hypergraph* h, char** text);
HGD_API hgd_status hgd_hypergraph_to_json(const hgd_hypergraph* h, char** json);
HGD_API hgd_status hgd_hypergraph_size(const hgd_hypergraph* h, int* num_vertices, int* num_edges);

/* Structural report: rank, degree, iwidth, c-miwidth for c <= cmax and
   optionally the VC dimension. */
HGD_API hgd_status hgd_stats(const hgd_hypergraph* h, int cmax, int with_vc, char** report_json);

/* Optimal cover of a vertex subset (JSON array of names, NULL for all). */
HGD_API hgd_status hgd_cover(const hgd_hypergraph* h, const char* subset_json, int fractional, char** cover_json);

/* Candidate bags. params_json holds "kind" ("ghd" or "fhd"), "k", "mode"
   and optional "c", "i", "d", "r", "eps", "budget". */
HGD_API hgd_status hgd_bags(const hgd_hypergraph* h, const char* params_json, char** bags_json);

/* Candidate tree decomposition over a JSON array of bags. */
HGD_API hgd_status hgd_ctd(const hgd_hypergraph* h, const char* bags_json, hgd_answer* answer, char** result_json);

/* Decomposition checks. kind overrides the kind stored in the JSON and k
   bounds the width; both may be NULL. */
HGD_API hgd_status hgd_validate(const hgd_hypergraph* h, const char* decomp_json, const char* kind, const char* k,
                                hgd_answer* answer, char** report_json);
HGD_API hgd_status hgd_check_compnf(const hgd_hypergraph* h, const char* decomp_json, hgd_answer* answer,
                                    char** report_json);
HGD_API hgd_status hgd_normalize_ghd(const hgd_hypergraph* h, const char* ghd_json, char** normalized_json);

/* Width deciders. Rationals are passed as "p/q" strings; options_json may be
   NULL. Results carry "answer", "width", "certificate" and "decomposition". */
HGD_API hgd_status hgd_check_ghd(const hgd_hypergraph* h, int k, const char* options_json, hgd_answer* answer,
                                 char** result_json);
HGD_API hgd_status hgd_check_fhd(const hgd_hypergraph* h, const char* k, const char* options_json,
                                 hgd_answer* answer, char** result_json);
HGD_API hgd_status hgd_approx_fhd(const hgd_hypergraph* h, const char* k, const char* eps, const char* options_json,
                                  hgd_answer* answer, char** result_json);
HGD_API hgd_status hgd_fhw_opt(const hgd_hypergraph* h, const char* big_k, const char* eps, const char* options_json,
                               hgd_answer* answer, char** result_json);
HGD_API hgd_status hgd_fhd_to_ghd(const hgd_hypergraph* h, const char* fhd_json, char** result_json);

/* Exact ghw or fhw ("ghw" / "fhw") by exhaustive search; refuses more than
   cap vertices. */
HGD_API hgd_status hgd_oracle(const hgd_hypergraph* h, const char* kind, int cap, char** result_json);

/* Hardness constructions. assignment_json may be NULL. */
HGD_API hgd_status hgd_reduce_3sat(const char* dimacs, hgd_hypergraph** out, char** layout_json);
HGD_API hgd_status hgd_intended_ghd(const char* dimacs, const char* assignment_json, char** ghd_json);
HGD_API hgd_status hgd_gadget(const char* m1_json, const char* m2_json, hgd_hypergraph** out);
HGD_API hgd_status hgd_lift(const hgd_hypergraph* h, const char* shift, hgd_hypergraph** out);

#ifdef __cplusplus
}
#endif

#endif /* HGDECOMP_H */
