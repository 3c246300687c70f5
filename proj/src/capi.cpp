#include "diamond/diamond.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "diamond/channel.hpp"
#include "diamond/error.hpp"
#include "diamond/linprog.hpp"
#include "diamond/region_io.hpp"
#include "diamond/regions.hpp"

using namespace diamond;

struct dmd_channel {
  ChannelConfig config;
};
struct dmd_region {
  regions::RateRegion region;
};
struct dmd_report {
  regions::ContainmentReport report;
};

namespace {

thread_local std::string g_last_error;

dmd_status fail(dmd_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

dmd_status from_cause(regions::SweepError::Cause c) {
  using C = regions::SweepError::Cause;
  switch (c) {
    case C::solver: return DMD_ERR_SOLVER;
    case C::domain: return DMD_ERR_DOMAIN;
    case C::validation: return DMD_ERR_INVALID;
    case C::unsupported: return DMD_ERR_UNSUPPORTED_VARIANT;
    case C::other: return DMD_ERR_INTERNAL;
  }
  return DMD_ERR_INTERNAL;
}

template <class F>
dmd_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return DMD_OK;
  } catch (const regions::SweepError& e) {
    return fail(from_cause(e.cause()), e.what());
  } catch (const lp::SolverError& e) {
    return fail(DMD_ERR_SOLVER, e.what());
  } catch (const ParseError& e) {
    return fail(DMD_ERR_PARSE, e.what());
  } catch (const DomainError& e) {
    return fail(DMD_ERR_DOMAIN, e.what());
  } catch (const UnsupportedVariantError& e) {
    return fail(DMD_ERR_UNSUPPORTED_VARIANT, e.what());
  } catch (const IoError& e) {
    return fail(DMD_ERR_IO, e.what());
  } catch (const ValidationError& e) {
    return fail(DMD_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DMD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DMD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DMD_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (!p) throw ValidationError(std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_doubles(const std::vector<double>& v, double** ks, size_t* n) {
  double* out = static_cast<double*>(std::malloc(sizeof(double) * (v.empty() ? 1 : v.size())));
  if (!out) throw std::bad_alloc();
  std::copy(v.begin(), v.end(), out);
  *ks = out;
  *n = v.size();
}

regions::Kind to_kind(dmd_protocol p) {
  switch (p) {
    case DMD_PROTOCOL_OUTER: return regions::Kind::outer;
    case DMD_PROTOCOL_MDF: return regions::Kind::mdf;
    case DMD_PROTOCOL_CF_CMAC: return regions::Kind::cf_cmac;
    case DMD_PROTOCOL_CF_BC: return regions::Kind::cf_bc;
    case DMD_PROTOCOL_COMABC: return regions::Kind::comabc;
    case DMD_PROTOCOL_AR_DF: return regions::Kind::ar_df;
  }
  throw ValidationError("unknown protocol code " + std::to_string(static_cast<int>(p)));
}

regions::GeneratorOptions gen_options(const dmd_options* o) {
  regions::GeneratorOptions g;
  if (o) {
    g.ardf_grid = o->ardf_grid;
    g.mdf_theta_points = o->mdf_theta_points;
  }
  return g;
}

dmd_channel* wrap(ChannelConfig c) {
  c.validate();
  return new dmd_channel{std::move(c)};
}

std::string manifest_arg(const char* m) { return m ? std::string(m) : std::string(); }

}  // namespace

extern "C" {

const char* dmd_version(void) { return DIAMOND_VERSION; }

const char* dmd_last_error(void) { return g_last_error.c_str(); }

const char* dmd_status_name(dmd_status s) {
  switch (s) {
    case DMD_OK: return "ok";
    case DMD_ERR_INVALID: return "invalid argument";
    case DMD_ERR_DOMAIN: return "domain error";
    case DMD_ERR_UNSUPPORTED_VARIANT: return "unsupported variant";
    case DMD_ERR_SOLVER: return "solver failure";
    case DMD_ERR_IO: return "i/o error";
    case DMD_ERR_PARSE: return "parse error";
    case DMD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void dmd_string_free(char* s) { std::free(s); }
void dmd_doubles_free(double* p) { std::free(p); }

void dmd_options_default(dmd_options* opts) {
  if (!opts) return;
  const regions::GeneratorOptions g;
  opts->ardf_grid = g.ardf_grid;
  opts->mdf_theta_points = g.mdf_theta_points;
  opts->threads = 1;
}

size_t dmd_preset_count(void) { return preset_names().size(); }

const char* dmd_preset_name(size_t i) {
  const auto names = preset_names();
  return i < names.size() ? names[i].data() : nullptr;
}

const char* dmd_preset_description(size_t i) {
  const auto names = preset_names();
  return i < names.size() ? preset_description(names[i]).data() : nullptr;
}

dmd_status dmd_channel_from_preset(const char* name, dmd_channel** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = wrap(channel_from_caption(name));
  });
}

dmd_status dmd_channel_from_json(const char* text, dmd_channel** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = wrap(io::channel_from_json(text));
  });
}

dmd_status dmd_channel_from_file(const char* path, dmd_channel** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(io::load_channel(path));
  });
}

dmd_status dmd_channel_create(dmd_variant variant, double a1, double a2,
                              double b1, double b2, double extra,
                              dmd_channel** out) {
  return guard([&] {
    need(out, "out");
    switch (variant) {
      case DMD_VARIANT_PLAIN: *out = wrap(make_plain(a1, a2, b1, b2)); return;
      case DMD_VARIANT_DIRECT_LINK:
        *out = wrap(make_direct_link(a1, a2, b1, b2, extra));
        return;
      case DMD_VARIANT_INTERFERING_RELAYS:
        *out = wrap(make_interfering(a1, a2, b1, b2, extra));
        return;
    }
    throw ValidationError("unknown variant code");
  });
}

dmd_status dmd_channel_set_convention(dmd_channel* ch, dmd_convention c) {
  return guard([&] {
    need(ch, "channel");
    if (c == DMD_CONVENTION_AS_PRINTED) ch->config.convention = Convention::as_printed;
    else if (c == DMD_CONVENTION_COMPLEX) ch->config.convention = Convention::complex;
    else throw ValidationError("unknown convention code");
  });
}

dmd_status dmd_parse_convention(const char* text, dmd_convention* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = parse_convention(text) == Convention::as_printed ? DMD_CONVENTION_AS_PRINTED
                                                            : DMD_CONVENTION_COMPLEX;
  });
}

dmd_status dmd_channel_swapped(const dmd_channel* ch, dmd_channel** out) {
  return guard([&] {
    need(ch, "channel");
    need(out, "out");
    *out = wrap(ch->config.swapped());
  });
}

dmd_status dmd_channel_variant(const dmd_channel* ch, dmd_variant* out) {
  return guard([&] {
    need(ch, "channel");
    need(out, "out");
    *out = static_cast<dmd_variant>(static_cast<int>(ch->config.variant));
  });
}

dmd_status dmd_channel_to_json(const dmd_channel* ch, char** out) {
  return guard([&] {
    need(ch, "channel");
    need(out, "out");
    *out = dup_string(io::channel_to_json(ch->config));
  });
}

void dmd_channel_free(dmd_channel* ch) { delete ch; }

dmd_status dmd_parse_protocol(const char* text, dmd_protocol* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = static_cast<dmd_protocol>(static_cast<int>(regions::parse_kind(text)));
  });
}

const char* dmd_protocol_name(dmd_protocol p) {
  try {
    return regions::to_string(to_kind(p)).data();
  } catch (...) {
    return nullptr;
  }
}

dmd_status dmd_support(const dmd_channel* ch, dmd_protocol protocol, double k,
                       const dmd_options* opts, double* r_a, double* r_b) {
  return guard([&] {
    need(ch, "channel");
    need(r_a, "r_a");
    need(r_b, "r_b");
    const auto gen = regions::make_generator(to_kind(protocol), ch->config,
                                             gen_options(opts));
    const SupportPoint p = gen(k);
    *r_a = p.rates.r_a;
    *r_b = p.rates.r_b;
  });
}

dmd_status dmd_parse_k_grid(const char* spec, double** ks, size_t* n) {
  return guard([&] {
    need(spec, "spec");
    need(ks, "ks");
    need(n, "n");
    copy_doubles(regions::parse_k_grid(spec), ks, n);
  });
}

dmd_status dmd_default_k_grid(double** ks, size_t* n) {
  return guard([&] {
    need(ks, "ks");
    need(n, "n");
    copy_doubles(regions::default_k_grid(), ks, n);
  });
}

dmd_status dmd_region_compute(const dmd_channel* ch, dmd_protocol protocol,
                              const double* ks, size_t n,
                              const dmd_options* opts, dmd_region** out) {
  return guard([&] {
    need(ch, "channel");
    need(out, "out");
    const std::vector<double> grid =
        (ks && n > 0) ? std::vector<double>(ks, ks + n) : regions::default_k_grid();
    regions::SweepOptions so;
    so.threads = opts ? opts->threads : 1;
    auto r = regions::compute_region(to_kind(protocol), ch->config, grid,
                                     gen_options(opts), so);
    *out = new dmd_region{std::move(r)};
  });
}

dmd_status dmd_region_hull(const dmd_region* const* rs, size_t n, dmd_region** out) {
  return guard([&] {
    need(rs, "regions");
    need(out, "out");
    std::vector<regions::RateRegion> in;
    for (size_t i = 0; i < n; ++i) {
      need(rs[i], "region");
      in.push_back(rs[i]->region);
    }
    *out = new dmd_region{regions::hull_of(in)};
  });
}

size_t dmd_region_size(const dmd_region* r) { return r ? r->region.samples.size() : 0; }

const char* dmd_region_label(const dmd_region* r) {
  return r ? r->region.label.c_str() : nullptr;
}

dmd_status dmd_region_sample(const dmd_region* r, size_t i, double* k,
                             double* r_a, double* r_b) {
  return guard([&] {
    need(r, "region");
    if (i >= r->region.samples.size()) throw ValidationError("sample index out of range");
    const auto& s = r->region.samples[i];
    if (k) *k = s.k;
    if (r_a) *r_a = s.rates.r_a;
    if (r_b) *r_b = s.rates.r_b;
  });
}

dmd_status dmd_region_schedule(const dmd_region* r, size_t i, int state, double* mu) {
  return guard([&] {
    need(r, "region");
    need(mu, "mu");
    if (i >= r->region.samples.size()) throw ValidationError("sample index out of range");
    if (state < 1 || state > kNumStates) throw ValidationError("state id must be 1..14");
    const auto& sch = r->region.samples[i].schedule;
    auto it = sch.find(state);
    *mu = it == sch.end() ? 0.0 : it->second;
  });
}

dmd_status dmd_region_to_string(const dmd_region* r, dmd_format format,
                                const char* manifest_json, char** out) {
  return guard([&] {
    need(r, "region");
    need(out, "out");
    *out = dup_string(format == DMD_FORMAT_JSON
                          ? io::region_to_json(r->region, manifest_arg(manifest_json))
                          : io::region_to_csv(r->region));
  });
}

dmd_status dmd_region_write(const dmd_region* r, const char* path,
                            dmd_format format, const char* manifest_json) {
  return guard([&] {
    need(r, "region");
    need(path, "path");
    io::write_text(path, format == DMD_FORMAT_JSON
                             ? io::region_to_json(r->region, manifest_arg(manifest_json))
                             : io::region_to_csv(r->region));
  });
}

void dmd_region_free(dmd_region* r) { delete r; }

dmd_status dmd_compare(const dmd_region* outer, const dmd_region* inner,
                       double tolerance, dmd_report** out) {
  return guard([&] {
    need(outer, "outer");
    need(inner, "inner");
    need(out, "out");
    *out = new dmd_report{regions::contains(outer->region, inner->region, tolerance)};
  });
}

int dmd_report_passed(const dmd_report* r) { return r && r->report.pass() ? 1 : 0; }

size_t dmd_report_size(const dmd_report* r) { return r ? r->report.entries.size() : 0; }

dmd_status dmd_report_entry(const dmd_report* r, size_t i, double* k,
                            double* outer_support, double* inner_support,
                            double* margin, int* pass) {
  return guard([&] {
    need(r, "report");
    if (i >= r->report.entries.size()) throw ValidationError("entry index out of range");
    const auto& e = r->report.entries[i];
    if (k) *k = e.k;
    if (outer_support) *outer_support = e.outer_support;
    if (inner_support) *inner_support = e.inner_support;
    if (margin) *margin = e.margin;
    if (pass) *pass = e.pass ? 1 : 0;
  });
}

dmd_status dmd_report_to_string(const dmd_report* r, dmd_format format,
                                const char* manifest_json, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = dup_string(format == DMD_FORMAT_JSON
                          ? io::report_to_json(r->report, manifest_arg(manifest_json))
                          : io::report_to_csv(r->report));
  });
}

dmd_status dmd_report_write(const dmd_report* r, const char* path,
                            dmd_format format, const char* manifest_json) {
  return guard([&] {
    need(r, "report");
    need(path, "path");
    io::write_text(path, format == DMD_FORMAT_JSON
                             ? io::report_to_json(r->report, manifest_arg(manifest_json))
                             : io::report_to_csv(r->report));
  });
}

void dmd_report_free(dmd_report* r) { delete r; }

}  // extern "C"
