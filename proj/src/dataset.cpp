#include "grs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "grs/rng.hpp"

namespace grs {
namespace {

// One CSV record, honouring quoted fields ("" escapes a quote). Returns false
// at EOF. Multi-line quoted fields are not supported (numeric data).
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  std::string line;
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  fields.clear();
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return true;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col,
                  const std::string& col_name) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (last[-1] == ' ' || last[-1] == '\t')) --last;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    std::ostringstream msg;
    msg << "unparseable cell at row " << row << ", column " << col + 1 << " ('"
        << col_name << "'): '" << cell << "'";
    throw std::runtime_error(msg.str());
  }
  return value;
}

}  // namespace

void Dataset::validate() const {
  if (x.rows() < 2) throw std::invalid_argument("dataset needs at least 2 rows");
  if (x.cols() < 1) throw std::invalid_argument("dataset needs at least 1 feature");
  if (y.cols() < 1) throw std::invalid_argument("dataset needs at least 1 target");
  if (x.rows() != y.rows()) throw std::invalid_argument("X/Y row count mismatch");
  if (feature_names.size() != x.cols() || target_names.size() != y.cols()) {
    throw std::invalid_argument("name count mismatch");
  }
  if (!x.all_finite() || !y.all_finite()) {
    throw std::invalid_argument("dataset contains non-finite entries");
  }
}

Dataset load_csv(const std::filesystem::path& path,
                 const std::vector<std::string>& target_columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());

  std::vector<std::string> header;
  if (!read_record(in, header) || header.empty()) {
    throw std::runtime_error("missing header row in " + path.string());
  }

  std::vector<std::size_t> target_idx;
  for (const auto& t : target_columns) {
    const auto it = std::find(header.begin(), header.end(), t);
    if (it == header.end()) {
      throw std::runtime_error("unknown target column '" + t + "'");
    }
    target_idx.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  std::vector<std::size_t> feature_idx;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (std::find(target_idx.begin(), target_idx.end(), j) == target_idx.end()) {
      feature_idx.push_back(j);
    }
  }
  if (feature_idx.empty()) throw std::runtime_error("no feature columns left");
  if (target_idx.empty()) throw std::runtime_error("no target columns given");

  std::vector<std::vector<double>> rows;
  std::vector<std::string> fields;
  std::size_t row_no = 1;  // header is row 1
  while (read_record(in, fields)) {
    ++row_no;
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << "row " << row_no << " has " << fields.size() << " cells, expected "
          << header.size();
      throw std::runtime_error(msg.str());
    }
    std::vector<double> parsed(header.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      parsed[j] = parse_cell(fields[j], row_no, j, header[j]);
    }
    rows.push_back(std::move(parsed));
  }
  if (rows.empty()) throw std::runtime_error("empty dataset in " + path.string());

  Dataset d;
  d.x = Matrix(rows.size(), feature_idx.size());
  d.y = Matrix(rows.size(), target_idx.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < feature_idx.size(); ++j) d.x(i, j) = rows[i][feature_idx[j]];
    for (std::size_t j = 0; j < target_idx.size(); ++j) d.y(i, j) = rows[i][target_idx[j]];
  }
  for (std::size_t j : feature_idx) d.feature_names.push_back(header[j]);
  for (std::size_t j : target_idx) d.target_names.push_back(header[j]);
  d.validate();
  return d;
}

void save_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out.precision(17);
  for (std::size_t j = 0; j < d.feature_names.size(); ++j) {
    out << d.feature_names[j] << ',';
  }
  for (std::size_t j = 0; j < d.target_names.size(); ++j) {
    out << d.target_names[j] << (j + 1 < d.target_names.size() ? ',' : '\n');
  }
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.p(); ++j) out << d.x(i, j) << ',';
    for (std::size_t j = 0; j < d.m(); ++j) {
      out << d.y(i, j) << (j + 1 < d.m() ? ',' : '\n');
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::array<Dataset, 3> split_dataset(const Dataset& d,
                                     const std::array<double, 3>& fractions,
                                     std::uint64_t seed) {
  for (double f : fractions) {
    if (!(f > 0.0)) throw std::invalid_argument("split fractions must be positive");
  }
  const double total = fractions[0] + fractions[1] + fractions[2];
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1");
  }

  const std::size_t n = d.n();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::uint32_t>(order));

  const std::size_t n_test = static_cast<std::size_t>(fractions[1] * static_cast<double>(n));
  const std::size_t n_val = static_cast<std::size_t>(fractions[2] * static_cast<double>(n));
  const std::size_t n_train = n - n_test - n_val;  // remainder goes to train
  if (n_train == 0 || n_test == 0 || n_val == 0) {
    throw std::invalid_argument("split would leave an empty partition");
  }

  auto take = [&](std::size_t begin, std::size_t count) {
    Dataset part;
    part.x = Matrix(count, d.p());
    part.y = Matrix(count, d.m());
    part.feature_names = d.feature_names;
    part.target_names = d.target_names;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t src = order[begin + i];
      std::copy(d.x.row(src).begin(), d.x.row(src).end(), part.x.row(i).begin());
      std::copy(d.y.row(src).begin(), d.y.row(src).end(), part.y.row(i).begin());
    }
    return part;
  };

  return {take(0, n_train), take(n_train, n_test), take(n_train + n_test, n_val)};
}

}  // namespace grs
