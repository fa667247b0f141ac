#ifndef NBLAB_RECORDS_HPP
#define NBLAB_RECORDS_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nblab {

// One row of experiment output. Fields that do not apply to an experiment
// hold NaN (doubles), -1 (ints), or "" and are emitted as empty CSV cells /
// JSON nulls.
struct ResultRecord {
  std::string experiment;  // fig3 | fig4 | rewire-scan | real-ipr
  int n_nodes = -1;        // nodes entering the spectral stage
  double c_bar = NAN;
  double delta = NAN;      // c_in - c_out
  std::string motif;       // none | clique | regular
  int motif_size = -1;
  int c = -1;              // full motif-node degree (fig4)
  int c0 = -1;             // base degree (fig4)
  double dtau_target = NAN;
  double dtau_achieved = NAN;
  int sample = -1;
  std::uint64_t seed = 0;
  std::string matrix;  // A | L | NL | M | B
  int rank = -1;       // 1-based eigen rank under the matrix's selector
  double eval_re = NAN;
  double eval_im = NAN;
  double ipr_node = NAN;
  double ipr_full = NAN;  // 2N-vector IPR, B only
  double overlap = NAN;
  double residual = NAN;
  bool converged = true;
  double wall_s = NAN;

  bool operator==(const ResultRecord& other) const;
};

// Full record schema (JSONL field order).
const std::vector<std::string>& record_columns();
// Fixed CSV column order: the record schema minus wall_s, which is excluded
// from the CSV body so identically-seeded reruns are byte-identical.
const std::vector<std::string>& csv_columns();

std::string to_csv(const std::vector<ResultRecord>& records);
std::string to_jsonl(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> from_csv(const std::string& text);
std::vector<ResultRecord> from_jsonl(const std::string& text);

void write_text_file(const std::filesystem::path& path, const std::string& body);
std::string read_text_file(const std::filesystem::path& path);

// Canonical record order used before emission so output is independent of
// worker scheduling.
void sort_records(std::vector<ResultRecord>& records);

}  // namespace nblab

#endif  // NBLAB_RECORDS_HPP
