#include "thetaper/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace thetaper::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                std::vector<std::string>& header) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_row(line);
    if (first) {
      header = cells;
      first = false;
    } else {
      if (cells.size() != header.size())
        throw std::invalid_argument("csv: row has " + std::to_string(cells.size()) +
                                    " cells, header has " +
                                    std::to_string(header.size()));
      rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::invalid_argument("csv: missing header row");
  return rows;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("csv: not a number: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("csv: trailing characters in '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) throw std::invalid_argument("csv: expected integer, got '" + s + "'");
  return static_cast<int>(v);
}

std::string fmt17(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_rec(const Json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      std::map<std::string, const Json*> sorted;
      for (auto it = j.begin(); it != j.end(); ++it) sorted[it.key()] = &it.value();
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : sorted) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(k).dump() + ": ";
        dump_rec(*v, out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalar = true;
      for (const auto& e : j) scalar = scalar && !e.is_structured();
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_rec(j[i], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt17(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::invalid_argument("binary field: truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a number or [re, im], got " + j.dump());
}

Json to_json(const ThetaSpec& spec) {
  Json theta = Json::array();
  for (const Complex& t : spec.theta()) theta.push_back(to_json(t));
  return Json{{"theta", theta}, {"T", spec.period()}, {"log_branch", spec.log_branch()}};
}

ThetaSpec theta_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("theta spec must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "theta" && it.key() != "T" && it.key() != "log_branch")
      throw std::invalid_argument("theta spec: unknown key '" + it.key() + "'");
  }
  if (!j.contains("theta") || !j["theta"].is_array())
    throw std::invalid_argument("theta spec: 'theta' must be a list");
  std::vector<Complex> theta;
  for (const auto& t : j["theta"]) theta.push_back(complex_from_json(t));
  if (!j.contains("T") || !j["T"].is_number())
    throw std::invalid_argument("theta spec: 'T' must be a number");
  std::vector<int> branch;
  if (j.contains("log_branch")) {
    if (!j["log_branch"].is_array()) throw std::invalid_argument("log_branch must be a list");
    for (const auto& k : j["log_branch"]) {
      if (!k.is_number_integer()) throw std::invalid_argument("log_branch entries must be integers");
      branch.push_back(k.get<int>());
    }
  }
  return ThetaSpec(std::move(theta), j["T"].get<double>(), std::move(branch));
}

std::string field_to_csv(const SampledField& f) {
  std::string out = f.dim() == 1 ? "m1,re,im\n" : "m1,m2,re,im\n";
  const int n = f.size();
  for (Index i = 0; i < f.values().size(); ++i) {
    if (f.dim() == 1)
      out += std::to_string(i);
    else
      out += std::to_string(i / n) + "," + std::to_string(i % n);
    out += "," + fmt17(f.values()[i].real()) + "," + fmt17(f.values()[i].imag()) + "\n";
  }
  return out;
}

SampledField field_from_csv(const std::string& text, const ThetaSpec& spec) {
  std::vector<std::string> header;
  const auto rows = parse_csv(text, header);
  const int dim = static_cast<int>(header.size()) - 2;
  if (dim != spec.dim()) throw std::invalid_argument("field csv: column count does not match dimension");
  const int n = dim == 1 ? static_cast<int>(rows.size())
                         : static_cast<int>(std::lround(std::sqrt(double(rows.size()))));
  GridSpec grid(dim, n);
  if (Index(rows.size()) != grid.total()) throw std::invalid_argument("field csv: row count is not N^n");
  SampledField f(grid, spec);
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    Index idx;
    if (dim == 1) {
      idx = to_int(r[0]);
    } else {
      const int m1 = to_int(r[0]), m2 = to_int(r[1]);
      if (m2 < 0 || m2 >= n) throw std::invalid_argument("field csv: index out of range");
      idx = Index(m1) * n + m2;
    }
    if (idx < 0 || idx >= grid.total()) throw std::invalid_argument("field csv: index out of range");
    if (seen[idx]) throw std::invalid_argument("field csv: duplicate node");
    seen[idx] = true;
    f.values()[idx] = {to_double(r[dim]), to_double(r[dim + 1])};
  }
  return f;
}

std::string coeffs_to_csv(const CoeffTable& c) {
  std::string out = c.dim() == 1 ? "xi_1,re,im\n" : "xi_1,xi_2,re,im\n";
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    out += std::to_string(xi[0]);
    if (c.dim() == 2) out += "," + std::to_string(xi[1]);
    out += "," + fmt17(c.entries()[i].real()) + "," + fmt17(c.entries()[i].imag()) + "\n";
  }
  return out;
}

CoeffTable coeffs_from_csv(const std::string& text, const ThetaSpec& spec) {
  std::vector<std::string> header;
  const auto rows = parse_csv(text, header);
  const int dim = static_cast<int>(header.size()) - 2;
  if (dim != spec.dim()) throw std::invalid_argument("coefficient csv: column count does not match dimension");
  int cutoff = 0;
  for (const auto& r : rows)
    for (int j = 0; j < dim; ++j) cutoff = std::max(cutoff, std::abs(to_int(r[j])));
  CoeffTable t(spec, cutoff);
  if (Index(rows.size()) != t.size())
    throw std::invalid_argument("coefficient csv: box |xi_j| <= " + std::to_string(cutoff) +
                                " is incomplete");
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    Mode xi{to_int(r[0]), dim == 2 ? to_int(r[1]) : 0};
    const Index idx = t.index_of(xi);
    if (seen[idx]) throw std::invalid_argument("coefficient csv: duplicate mode");
    seen[idx] = true;
    const Complex v{to_double(r[dim]), to_double(r[dim + 1])};
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("coefficient csv: non-finite entry");
    t[xi] = v;
  }
  return t;
}

std::string field_to_binary(const SampledField& f) {
  std::string out;
  put<std::uint32_t>(out, kBinaryMagic);
  put<std::uint32_t>(out, kBinaryVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.size()));
  put<double>(out, f.spec().period());
  put<std::int32_t>(out, f.spec().log_branch()[0]);
  put<std::int32_t>(out, f.dim() == 2 ? f.spec().log_branch()[1] : 0);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.values().size()));
  for (Index i = 0; i < f.values().size(); ++i) {
    put<double>(out, f.values()[i].real());
    put<double>(out, f.values()[i].imag());
  }
  return out;
}

SampledField field_from_binary(const std::string& bytes, std::span<const Complex> theta) {
  std::size_t pos = 0;
  if (get<std::uint32_t>(bytes, pos) != kBinaryMagic)
    throw std::invalid_argument("binary field: bad magic");
  if (get<std::uint32_t>(bytes, pos) != kBinaryVersion)
    throw std::invalid_argument("binary field: unsupported version");
  const int dim = static_cast<int>(get<std::uint32_t>(bytes, pos));
  const int n = static_cast<int>(get<std::uint32_t>(bytes, pos));
  const double period = get<double>(bytes, pos);
  const int b0 = get<std::int32_t>(bytes, pos);
  const int b1 = get<std::int32_t>(bytes, pos);
  const auto count = get<std::uint64_t>(bytes, pos);
  if (static_cast<int>(theta.size()) != dim)
    throw std::invalid_argument("binary field: theta length does not match stored dimension");
  std::vector<int> branch{b0};
  if (dim == 2) branch.push_back(b1);
  ThetaSpec spec(std::vector<Complex>(theta.begin(), theta.end()), period, branch);
  GridSpec grid(dim, n);
  if (count != static_cast<std::uint64_t>(grid.total()))
    throw std::invalid_argument("binary field: sample count does not match N^n");
  SampledField f(grid, spec);
  for (Index i = 0; i < grid.total(); ++i) {
    const double re = get<double>(bytes, pos);
    const double im = get<double>(bytes, pos);
    f.values()[i] = {re, im};
  }
  if (pos != bytes.size()) throw std::invalid_argument("binary field: trailing bytes");
  return f;
}

std::string dump(const Json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open '" + p.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed on '" + p.string() + "'");
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& data) {
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed on '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + p.string() + "'");
  }
}

}  // namespace thetaper::io
