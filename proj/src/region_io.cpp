#include "diamond/region_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace diamond::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

double number_field(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ValidationError("channel field '" + key + "' must be a number");
  return v.get<double>();
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto c = line.find(',', pos);
    out.emplace_back(line.substr(pos, c == std::string_view::npos ? line.size() - pos : c - pos));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  return out;
}

double parse_cell(const std::string& s, std::size_t line_no) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    throw ParseError("CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

json k_json(double k) {
  if (std::isinf(k)) return "inf";
  return k;
}

json manifest_or_empty(std::string_view manifest) {
  if (manifest.empty()) return json::object();
  json m = parse_json(manifest, "manifest");
  if (!m.is_object()) throw ValidationError("manifest must be a JSON object");
  return m;
}

}  // namespace

ChannelConfig channel_from_json(std::string_view text) {
  const json j = parse_json(text, "channel config");
  if (!j.is_object()) throw ValidationError("channel config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "variant" && key != "snr_db" && key != "snr_linear" &&
        key != "convention")
      throw ValidationError("unknown channel config key '" + key + "'");
  if (!j.contains("variant") || !j["variant"].is_string())
    throw ValidationError("channel config needs a string 'variant'");
  const bool db = j.contains("snr_db");
  if (db == j.contains("snr_linear"))
    throw ValidationError("channel config needs exactly one of 'snr_db', 'snr_linear'");
  const json& snr = db ? j["snr_db"] : j["snr_linear"];
  if (!snr.is_object()) throw ValidationError("SNR block must be an object");

  ChannelConfig c;
  c.variant = parse_variant(j["variant"].get<std::string>());
  for (const auto& [key, _] : snr.items())
    if (key != "a1" && key != "a2" && key != "b1" && key != "b2" &&
        key != "ab" && key != "12")
      throw ValidationError("unknown SNR key '" + key + "'");
  for (const char* key : {"a1", "a2", "b1", "b2"})
    if (!snr.contains(key))
      throw ValidationError(std::string("missing SNR '") + key + "'");
  if (snr.contains("ab") != (c.variant == Variant::direct_link))
    throw ValidationError("SNR 'ab' must be given exactly for the direct_link variant");
  if (snr.contains("12") != (c.variant == Variant::interfering_relays))
    throw ValidationError("SNR '12' must be given exactly for the interfering_relays variant");

  auto get = [&](const char* key) {
    const double v = number_field(snr, key);
    return db ? snr_from_db(v) : v;
  };
  c.gamma_a1 = get("a1");
  c.gamma_a2 = get("a2");
  c.gamma_b1 = get("b1");
  c.gamma_b2 = get("b2");
  if (snr.contains("ab")) c.gamma_ab = get("ab");
  if (snr.contains("12")) c.gamma_12 = get("12");
  if (j.contains("convention")) {
    if (!j["convention"].is_string())
      throw ValidationError("'convention' must be a string");
    c.convention = parse_convention(j["convention"].get<std::string>());
  }
  c.validate();
  return c;
}

ChannelConfig load_channel(const std::string& path) {
  return channel_from_json(read_text(path));
}

std::string channel_to_json(const ChannelConfig& c) {
  json snr = {{"a1", c.gamma_a1}, {"a2", c.gamma_a2}, {"b1", c.gamma_b1},
              {"b2", c.gamma_b2}};
  if (c.gamma_ab) snr["ab"] = *c.gamma_ab;
  if (c.gamma_12) snr["12"] = *c.gamma_12;
  json j = {{"variant", std::string(to_string(c.variant))},
            {"snr_linear", snr},
            {"convention", std::string(to_string(c.convention))}};
  return j.dump();
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string region_to_csv(const regions::RateRegion& region) {
  std::set<int> states;
  for (const auto& s : region.samples)
    for (const auto& [id, _] : s.schedule) states.insert(id);

  std::ostringstream os;
  os << "protocol,convention,k,R_a,R_b";
  for (int id : states) os << ",mu_" << id;
  os << '\n';
  for (const auto& s : region.samples) {
    os << region.label << ',' << to_string(region.convention) << ','
       << format_number(s.k) << ',' << format_number(s.rates.r_a) << ','
       << format_number(s.rates.r_b);
    for (int id : states) {
      os << ',';
      auto it = s.schedule.find(id);
      if (it != s.schedule.end()) os << format_number(it->second);
    }
    os << '\n';
  }
  return os.str();
}

regions::RateRegion region_from_csv(std::string_view text,
                                    const ChannelConfig& channel) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError("empty region CSV");

  const auto header = split_line(lines[0]);
  const std::vector<std::string> fixed{"protocol", "convention", "k", "R_a", "R_b"};
  if (header.size() < fixed.size() ||
      !std::equal(fixed.begin(), fixed.end(), header.begin()))
    throw ParseError("region CSV header must start with protocol,convention,k,R_a,R_b");
  std::vector<int> states;
  for (std::size_t i = fixed.size(); i < header.size(); ++i) {
    const std::string& h = header[i];
    int id = 0;
    if (h.rfind("mu_", 0) != 0 ||
        std::from_chars(h.data() + 3, h.data() + h.size(), id).ptr != h.data() + h.size() ||
        id < 1 || id > kNumStates)
      throw ParseError("bad schedule column '" + h + "'");
    states.push_back(id);
  }

  regions::RateRegion r;
  r.channel = channel;
  r.convention = channel.convention;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split_line(lines[li]);
    if (cells.size() != header.size())
      throw ParseError("CSV line " + std::to_string(li + 1) + ": expected " +
                       std::to_string(header.size()) + " cells");
    if (li == 1) {
      r.label = cells[0];
      r.convention = parse_convention(cells[1]);
    } else if (cells[0] != r.label) {
      throw ParseError("CSV mixes protocols '" + r.label + "' and '" + cells[0] + "'");
    }
    regions::Sample s;
    s.k = parse_cell(cells[2], li + 1);
    s.rates = {parse_cell(cells[3], li + 1), parse_cell(cells[4], li + 1)};
    for (std::size_t i = 0; i < states.size(); ++i) {
      const std::string& cell = cells[fixed.size() + i];
      if (!cell.empty()) s.schedule[states[i]] = parse_cell(cell, li + 1);
    }
    r.samples.push_back(std::move(s));
  }
  return r;
}

std::string region_to_json(const regions::RateRegion& region,
                           std::string_view manifest_json) {
  json samples = json::array();
  for (const auto& s : region.samples) {
    json sched = json::object();
    for (const auto& [id, mu] : s.schedule) sched["mu_" + std::to_string(id)] = mu;
    samples.push_back({{"k", k_json(s.k)},
                       {"R_a", s.rates.r_a},
                       {"R_b", s.rates.r_b},
                       {"schedule", sched}});
  }
  json j = {{"manifest", manifest_or_empty(manifest_json)},
            {"protocol", region.label},
            {"convention", std::string(to_string(region.convention))},
            {"channel", json::parse(channel_to_json(region.channel))},
            {"samples", samples}};
  return j.dump(2) + "\n";
}

std::string report_to_csv(const regions::ContainmentReport& report) {
  std::ostringstream os;
  os << "outer,inner,k,outer_support,inner_support,margin,pass\n";
  for (const auto& e : report.entries)
    os << report.outer_label << ',' << report.inner_label << ','
       << format_number(e.k) << ',' << format_number(e.outer_support) << ','
       << format_number(e.inner_support) << ',' << format_number(e.margin)
       << ',' << (e.pass ? 1 : 0) << '\n';
  return os.str();
}

std::string report_to_json(const regions::ContainmentReport& report,
                           std::string_view manifest_json) {
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"k", k_json(e.k)},
                       {"outer_support", e.outer_support},
                       {"inner_support", e.inner_support},
                       {"margin", e.margin},
                       {"pass", e.pass}});
  json j = {{"manifest", manifest_or_empty(manifest_json)},
            {"outer", report.outer_label},
            {"inner", report.inner_label},
            {"tolerance", report.tolerance},
            {"pass", report.pass()},
            {"min_margin", report.min_margin()},
            {"entries", entries}};
  return j.dump(2) + "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace diamond::io
