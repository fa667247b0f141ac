#include "nblab/records.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace nblab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_int(int v) { return v < 0 ? "" : std::to_string(v); }

double parse_double(const std::string& s) {
  if (s.empty()) return NAN;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("bad double field: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  if (s.empty()) return -1;
  return std::stoi(s);
}

bool num_eq(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

bool ResultRecord::operator==(const ResultRecord& other) const {
  return experiment == other.experiment && n_nodes == other.n_nodes &&
         num_eq(c_bar, other.c_bar) && num_eq(delta, other.delta) && motif == other.motif &&
         motif_size == other.motif_size && c == other.c && c0 == other.c0 &&
         num_eq(dtau_target, other.dtau_target) && num_eq(dtau_achieved, other.dtau_achieved) &&
         sample == other.sample && seed == other.seed && matrix == other.matrix &&
         rank == other.rank && num_eq(eval_re, other.eval_re) && num_eq(eval_im, other.eval_im) &&
         num_eq(ipr_node, other.ipr_node) && num_eq(ipr_full, other.ipr_full) &&
         num_eq(overlap, other.overlap) && num_eq(residual, other.residual) &&
         converged == other.converged && num_eq(wall_s, other.wall_s);
}

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {
      "experiment", "n_nodes", "c_bar", "delta", "motif", "motif_size", "c", "c0",
      "dtau_target", "dtau_achieved", "sample", "seed", "matrix", "rank",
      "eval_re", "eval_im", "ipr_node", "ipr_full", "overlap", "residual",
      "converged", "wall_s"};
  return cols;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    auto c = record_columns();
    c.pop_back();  // wall_s
    return c;
  }();
  return cols;
}

namespace {

std::vector<std::string> record_fields(const ResultRecord& r) {
  return {r.experiment,
          fmt_int(r.n_nodes),
          fmt_double(r.c_bar),
          fmt_double(r.delta),
          r.motif,
          fmt_int(r.motif_size),
          fmt_int(r.c),
          fmt_int(r.c0),
          fmt_double(r.dtau_target),
          fmt_double(r.dtau_achieved),
          fmt_int(r.sample),
          std::to_string(r.seed),
          r.matrix,
          fmt_int(r.rank),
          fmt_double(r.eval_re),
          fmt_double(r.eval_im),
          fmt_double(r.ipr_node),
          fmt_double(r.ipr_full),
          fmt_double(r.overlap),
          fmt_double(r.residual),
          r.converged ? "1" : "0",
          fmt_double(r.wall_s)};
}

ResultRecord record_from_fields(std::vector<std::string> f) {
  if (f.size() == csv_columns().size()) f.push_back("");  // wall_s absent in CSV
  if (f.size() != record_columns().size())
    throw std::runtime_error("record row has wrong field count");
  ResultRecord r;
  r.experiment = f[0];
  r.n_nodes = parse_int(f[1]);
  r.c_bar = parse_double(f[2]);
  r.delta = parse_double(f[3]);
  r.motif = f[4];
  r.motif_size = parse_int(f[5]);
  r.c = parse_int(f[6]);
  r.c0 = parse_int(f[7]);
  r.dtau_target = parse_double(f[8]);
  r.dtau_achieved = parse_double(f[9]);
  r.sample = parse_int(f[10]);
  r.seed = std::stoull(f[11]);
  r.matrix = f[12];
  r.rank = parse_int(f[13]);
  r.eval_re = parse_double(f[14]);
  r.eval_im = parse_double(f[15]);
  r.ipr_node = parse_double(f[16]);
  r.ipr_full = parse_double(f[17]);
  r.overlap = parse_double(f[18]);
  r.residual = parse_double(f[19]);
  r.converged = f[20] == "1";
  r.wall_s = parse_double(f[21]);
  return r;
}

}  // namespace

std::string to_csv(const std::vector<ResultRecord>& records) {
  // Wall time is flaky run to run and stays out of the CSV body so reruns
  // with the same config and seed are byte-identical; the JSONL mirror
  // carries it.
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (const auto& r : records) {
    auto fields = record_fields(r);
    fields.pop_back();  // wall_s
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      if (fields[i].find(',') != std::string::npos)
        throw std::runtime_error("CSV field contains a comma");
      out += fields[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<ResultRecord> from_csv(const std::string& text) {
  std::vector<ResultRecord> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      fields.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    out.push_back(record_from_fields(std::move(fields)));
  }
  return out;
}

namespace {

void put(ordered_json& j, const char* key, double v) {
  if (std::isnan(v)) j[key] = nullptr;
  else j[key] = v;
}
void put(ordered_json& j, const char* key, int v) {
  if (v < 0) j[key] = nullptr;
  else j[key] = v;
}
void put(ordered_json& j, const char* key, const std::string& v) {
  if (v.empty()) j[key] = nullptr;
  else j[key] = v;
}

double get_double(const ordered_json& j, const char* key) {
  return j.at(key).is_null() ? NAN : j.at(key).get<double>();
}
int get_int(const ordered_json& j, const char* key) {
  return j.at(key).is_null() ? -1 : j.at(key).get<int>();
}
std::string get_str(const ordered_json& j, const char* key) {
  return j.at(key).is_null() ? "" : j.at(key).get<std::string>();
}

}  // namespace

std::string to_jsonl(const std::vector<ResultRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    put(j, "experiment", r.experiment);
    put(j, "n_nodes", r.n_nodes);
    put(j, "c_bar", r.c_bar);
    put(j, "delta", r.delta);
    put(j, "motif", r.motif);
    put(j, "motif_size", r.motif_size);
    put(j, "c", r.c);
    put(j, "c0", r.c0);
    put(j, "dtau_target", r.dtau_target);
    put(j, "dtau_achieved", r.dtau_achieved);
    put(j, "sample", r.sample);
    j["seed"] = r.seed;
    put(j, "matrix", r.matrix);
    put(j, "rank", r.rank);
    put(j, "eval_re", r.eval_re);
    put(j, "eval_im", r.eval_im);
    put(j, "ipr_node", r.ipr_node);
    put(j, "ipr_full", r.ipr_full);
    put(j, "overlap", r.overlap);
    put(j, "residual", r.residual);
    j["converged"] = r.converged;
    put(j, "wall_s", r.wall_s);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ResultRecord> from_jsonl(const std::string& text) {
  std::vector<ResultRecord> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const ordered_json j = ordered_json::parse(line);
    ResultRecord r;
    r.experiment = get_str(j, "experiment");
    r.n_nodes = get_int(j, "n_nodes");
    r.c_bar = get_double(j, "c_bar");
    r.delta = get_double(j, "delta");
    r.motif = get_str(j, "motif");
    r.motif_size = get_int(j, "motif_size");
    r.c = get_int(j, "c");
    r.c0 = get_int(j, "c0");
    r.dtau_target = get_double(j, "dtau_target");
    r.dtau_achieved = get_double(j, "dtau_achieved");
    r.sample = get_int(j, "sample");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.matrix = get_str(j, "matrix");
    r.rank = get_int(j, "rank");
    r.eval_re = get_double(j, "eval_re");
    r.eval_im = get_double(j, "eval_im");
    r.ipr_node = get_double(j, "ipr_node");
    r.ipr_full = get_double(j, "ipr_full");
    r.overlap = get_double(j, "overlap");
    r.residual = get_double(j, "residual");
    r.converged = j.at("converged").get<bool>();
    r.wall_s = get_double(j, "wall_s");
    out.push_back(std::move(r));
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void sort_records(std::vector<ResultRecord>& records) {
  auto key = [](const ResultRecord& r) {
    return std::make_tuple(r.experiment, r.delta, r.c, r.motif, r.motif_size,
                           r.dtau_target, r.sample, r.matrix, r.rank);
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const ResultRecord& a, const ResultRecord& b) {
                     auto ka = key(a), kb = key(b);
                     // NaN-safe comparison: treat NaN as smallest
                     auto lt = [](double x, double y) {
                       if (std::isnan(x)) return !std::isnan(y);
                       if (std::isnan(y)) return false;
                       return x < y;
                     };
                     if (std::get<0>(ka) != std::get<0>(kb)) return std::get<0>(ka) < std::get<0>(kb);
                     if (!num_eq(std::get<1>(ka), std::get<1>(kb))) return lt(std::get<1>(ka), std::get<1>(kb));
                     if (std::get<2>(ka) != std::get<2>(kb)) return std::get<2>(ka) < std::get<2>(kb);
                     if (std::get<3>(ka) != std::get<3>(kb)) return std::get<3>(ka) < std::get<3>(kb);
                     if (std::get<4>(ka) != std::get<4>(kb)) return std::get<4>(ka) < std::get<4>(kb);
                     if (!num_eq(std::get<5>(ka), std::get<5>(kb))) return lt(std::get<5>(ka), std::get<5>(kb));
                     if (std::get<6>(ka) != std::get<6>(kb)) return std::get<6>(ka) < std::get<6>(kb);
                     if (std::get<7>(ka) != std::get<7>(kb)) return std::get<7>(ka) < std::get<7>(kb);
                     return std::get<8>(ka) < std::get<8>(kb);
                   });
}

}  // namespace nblab
