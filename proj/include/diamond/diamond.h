#ifndef DIAMOND_DIAMOND_H
#define DIAMOND_DIAMOND_H

/* C interface to the two-way diamond relay rate-region library.
 *
 * Every function that can fail returns a dmd_status; on failure the
 * message is available from dmd_last_error() on the same thread until the
 * next call. Objects are opaque and released with the matching _free
 * function (NULL is accepted). Strings returned through char** are owned by
 * the caller and released with dmd_string_free.
 *
 * Ratios: k selects the boundary point on the ray R_b = k * R_a. k = 0 is
 * the one-way A->B point; k = INFINITY the one-way B->A point.
 */

#include <stddef.h>

#if defined(DIAMOND_BUILDING_LIBRARY)
#define DMD_API __attribute__((visibility("default")))
#else
#define DMD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dmd_status {
  DMD_OK = 0,
  DMD_ERR_INVALID = 1,             /* bad argument or malformed input */
  DMD_ERR_DOMAIN = 2,              /* negative / non-finite SNR etc. */
  DMD_ERR_UNSUPPORTED_VARIANT = 3, /* protocol needs another variant */
  DMD_ERR_SOLVER = 4,              /* LP not solved to optimality */
  DMD_ERR_IO = 5,
  DMD_ERR_PARSE = 6, /* malformed JSON / CSV text */
  DMD_ERR_INTERNAL = 7
} dmd_status;

typedef enum dmd_variant {
  DMD_VARIANT_PLAIN = 0,
  DMD_VARIANT_DIRECT_LINK = 1,
  DMD_VARIANT_INTERFERING_RELAYS = 2
} dmd_variant;

typedef enum dmd_convention {
  DMD_CONVENTION_AS_PRINTED = 0,
  DMD_CONVENTION_COMPLEX = 1
} dmd_convention;

typedef enum dmd_protocol {
  DMD_PROTOCOL_OUTER = 0,
  DMD_PROTOCOL_MDF = 1,
  DMD_PROTOCOL_CF_CMAC = 2,
  DMD_PROTOCOL_CF_BC = 3,
  DMD_PROTOCOL_COMABC = 4,
  DMD_PROTOCOL_AR_DF = 5
} dmd_protocol;

typedef enum dmd_format { DMD_FORMAT_CSV = 0, DMD_FORMAT_JSON = 1 } dmd_format;

typedef struct dmd_channel dmd_channel;
typedef struct dmd_region dmd_region;
typedef struct dmd_report dmd_report;

typedef struct dmd_options {
  int ardf_grid;        /* AR-DF values per split parameter, >= 2 */
  int mdf_theta_points; /* MDF broadcast power-split grid, >= 2 */
  unsigned threads;     /* sweep workers; 0 = hardware concurrency */
} dmd_options;

DMD_API const char* dmd_version(void);
DMD_API const char* dmd_last_error(void);
DMD_API const char* dmd_status_name(dmd_status status);
DMD_API void dmd_string_free(char* s);
DMD_API void dmd_options_default(dmd_options* opts);

/* ---- channels ---- */

DMD_API size_t dmd_preset_count(void);
DMD_API const char* dmd_preset_name(size_t index);
DMD_API const char* dmd_preset_description(size_t index);

DMD_API dmd_status dmd_channel_from_preset(const char* name, dmd_channel** out);
DMD_API dmd_status dmd_channel_from_json(const char* text, dmd_channel** out);
DMD_API dmd_status dmd_channel_from_file(const char* path, dmd_channel** out);
/* Linear SNRs. `extra` is gamma_ab (direct link) or gamma_12 (interfering
 * relays) and is ignored for the plain variant. */
DMD_API dmd_status dmd_channel_create(dmd_variant variant, double a1, double a2,
                                      double b1, double b2, double extra,
                                      dmd_channel** out);
DMD_API dmd_status dmd_channel_set_convention(dmd_channel* ch,
                                              dmd_convention convention);
DMD_API dmd_status dmd_parse_convention(const char* text, dmd_convention* out);
/* Same network with the terminal labels A and B exchanged. */
DMD_API dmd_status dmd_channel_swapped(const dmd_channel* ch, dmd_channel** out);
DMD_API dmd_status dmd_channel_variant(const dmd_channel* ch, dmd_variant* out);
DMD_API dmd_status dmd_channel_to_json(const dmd_channel* ch, char** out);
DMD_API void dmd_channel_free(dmd_channel* ch);

/* ---- supports and regions ---- */

DMD_API dmd_status dmd_parse_protocol(const char* text, dmd_protocol* out);
DMD_API const char* dmd_protocol_name(dmd_protocol protocol);

/* opts may be NULL for defaults. */
DMD_API dmd_status dmd_support(const dmd_channel* ch, dmd_protocol protocol,
                               double k, const dmd_options* opts, double* r_a,
                               double* r_b);

/* "start:stop:count[,log]" or a comma list. Free *ks with dmd_doubles_free. */
DMD_API dmd_status dmd_parse_k_grid(const char* spec, double** ks, size_t* n);
DMD_API dmd_status dmd_default_k_grid(double** ks, size_t* n);
DMD_API void dmd_doubles_free(double* p);

/* Sweeps ks (strictly increasing; NULL/0 for the default grid) plus both
 * axis points. */
DMD_API dmd_status dmd_region_compute(const dmd_channel* ch,
                                      dmd_protocol protocol, const double* ks,
                                      size_t n, const dmd_options* opts,
                                      dmd_region** out);
DMD_API dmd_status dmd_region_hull(const dmd_region* const* regions, size_t n,
                                   dmd_region** out);
DMD_API size_t dmd_region_size(const dmd_region* region);
DMD_API const char* dmd_region_label(const dmd_region* region);
DMD_API dmd_status dmd_region_sample(const dmd_region* region, size_t index,
                                     double* k, double* r_a, double* r_b);
/* Time fraction of `state` (1..14) in sample `index`; 0 when unused. */
DMD_API dmd_status dmd_region_schedule(const dmd_region* region, size_t index,
                                       int state, double* mu);
DMD_API dmd_status dmd_region_to_string(const dmd_region* region,
                                        dmd_format format,
                                        const char* manifest_json, char** out);
/* manifest_json (JSON object or NULL) is embedded by the JSON format only. */
DMD_API dmd_status dmd_region_write(const dmd_region* region, const char* path,
                                    dmd_format format,
                                    const char* manifest_json);
DMD_API void dmd_region_free(dmd_region* region);

/* ---- containment ---- */

DMD_API dmd_status dmd_compare(const dmd_region* outer, const dmd_region* inner,
                               double tolerance, dmd_report** out);
DMD_API int dmd_report_passed(const dmd_report* report);
DMD_API size_t dmd_report_size(const dmd_report* report);
DMD_API dmd_status dmd_report_entry(const dmd_report* report, size_t index,
                                    double* k, double* outer_support,
                                    double* inner_support, double* margin,
                                    int* pass);
DMD_API dmd_status dmd_report_to_string(const dmd_report* report,
                                        dmd_format format,
                                        const char* manifest_json, char** out);
DMD_API dmd_status dmd_report_write(const dmd_report* report, const char* path,
                                    dmd_format format,
                                    const char* manifest_json);
DMD_API void dmd_report_free(dmd_report* report);

#ifdef __cplusplus
}
#endif

#endif
