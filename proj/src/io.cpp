#include "circlelab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace circlelab {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  return out;
}

bool parse_number(const std::string& s, double& out) {
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && p == end;
}

// Rows of numeric CSV; a first row that fails to parse is treated as a header.
std::vector<std::vector<double>> numeric_rows(const std::string& text, std::size_t min_cols, const char* who) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    std::vector<double> row;
    bool ok = fields.size() >= min_cols;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_number(f, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      require(rows.empty() && line_no == 1,
              std::string(who) + ": malformed CSV at line " + std::to_string(line_no));
      continue;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string signal_to_json(const Signal& f) {
  nlohmann::json j;
  j["modulus"] = f.modulus();
  std::vector<double> re, im;
  for (const auto& v : f.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

Signal signal_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("signal_from_json: ") + e.what());
  }
  require(j.contains("modulus") && j.contains("re"), "signal_from_json: fields modulus and re are required");
  const auto Q = j["modulus"].get<std::int64_t>();
  const auto re = j["re"].get<std::vector<double>>();
  const auto im = j.contains("im") ? j["im"].get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
  require(Q >= 1 && static_cast<std::int64_t>(re.size()) == Q && im.size() == re.size(),
          "signal_from_json: re and im must both have length modulus");
  std::vector<Complex> values(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) values[i] = {re[i], im[i]};
  return Signal(std::move(values));
}

std::string signal_to_csv(const Signal& f) {
  std::string out = "index,re,im\n";
  for (std::int64_t x = 0; x < f.modulus(); ++x) {
    out += std::to_string(x) + "," + format_double(f[x].real()) + "," + format_double(f[x].imag()) + "\n";
  }
  return out;
}

Signal signal_from_csv(const std::string& text) {
  const auto rows = numeric_rows(text, 2, "signal_from_csv");
  require(!rows.empty(), "signal_from_csv: no data rows");
  std::vector<Complex> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i][0] == static_cast<double>(i), "signal_from_csv: indices must run 0..Q-1 in order");
    values[i] = {rows[i][1], rows[i].size() > 2 ? rows[i][2] : 0.0};
  }
  return Signal(std::move(values));
}

RealSequence sequence_from_csv(const std::string& text) {
  const auto rows = numeric_rows(text, 2, "sequence_from_csv");
  require(!rows.empty(), "sequence_from_csv: no data rows");
  std::vector<Complex> values;
  std::vector<std::int64_t> labels;
  for (const auto& row : rows) {
    require(row[0] == std::floor(row[0]), "sequence_from_csv: labels must be integers");
    labels.push_back(static_cast<std::int64_t>(row[0]));
    values.emplace_back(row[1], row.size() > 2 ? row[2] : 0.0);
  }
  return RealSequence(std::move(values), std::move(labels));
}

std::string sequence_to_csv(const RealSequence& seq) {
  std::string out = "label,re,im\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out += std::to_string(seq.labels()[i]) + "," + format_double(seq.values()[i].real()) + "," +
           format_double(seq.values()[i].imag()) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write " + path);
  out << content;
}

}  // namespace circlelab
