#include "halfspace/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace halfspace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("parse_double: bad number '" + s + "'");
  return v;
}

void write_labeled_set(std::ostream& os, const LabeledSet& s) {
  os << "d=" << s.dim() << " n=" << s.size() << " provenance=" << s.provenance().tag() << "\n";
  for (Index i = 0; i < s.size(); ++i) {
    const CubePoint& p = s.point(i);
    for (Index c = 0; c < s.dim(); ++c) os << (p.get(c) > 0 ? "+1 " : "-1 ");
    os << (s.label(i) > 0 ? "+1" : "-1") << "\n";
  }
}

LabeledSet read_labeled_set(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("dataset: missing header");
  Index d = -1, n = -1;
  Provenance prov;
  std::istringstream hs(header);
  std::string field;
  while (hs >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("dataset: malformed header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "d")
      d = std::stoll(val);
    else if (key == "n")
      n = std::stoll(val);
    else if (key == "provenance")
      prov = Provenance::parse(val);
    else
      throw std::runtime_error("dataset: unknown header key '" + key + "'");
  }
  if (d < 1 || n < 0) throw std::runtime_error("dataset: header must set d>=1 and n>=0");

  LabeledSet out(d, prov);
  std::vector<int> signs(static_cast<std::size_t>(d));
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < d; ++c) {
      int v;
      if (!(is >> v) || (v != 1 && v != -1))
        throw std::runtime_error("dataset: bad token at sample " + std::to_string(r));
      signs[static_cast<std::size_t>(c)] = v;
    }
    int y;
    if (!(is >> y) || (y != 1 && y != -1))
      throw std::runtime_error("dataset: bad label at sample " + std::to_string(r));
    out.push_back(CubePoint::from_signs(signs), y);
  }
  return out;
}

void save_labeled_set(const std::string& path, const LabeledSet& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_labeled_set(f, s);
  if (!f) throw std::runtime_error("write failed on '" + path + "'");
}

LabeledSet load_labeled_set(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return read_labeled_set(f);
}

void write_halfspace(std::ostream& os, const Halfspace& h) {
  for (Index i = 0; i < h.dim(); ++i) os << format_double(h.weights()[i]) << "\n";
  os << "tau=" << format_double(h.bias()) << "\n";
}

Halfspace read_halfspace(std::istream& is) {
  std::vector<double> ws;
  std::string line;
  bool saw_tau = false;
  double tau = 0.0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("tau=", 0) == 0) {
      tau = parse_double(line.substr(4));
      saw_tau = true;
      break;
    }
    ws.push_back(parse_double(line));
  }
  if (!saw_tau) throw std::runtime_error("halfspace: missing tau line");
  Vector w(static_cast<Index>(ws.size()));
  for (std::size_t i = 0; i < ws.size(); ++i) w[static_cast<Index>(i)] = ws[i];
  return Halfspace(std::move(w), tau);
}

void save_halfspace(const std::string& path, const Halfspace& h) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_halfspace(f, h);
  if (!f) throw std::runtime_error("write failed on '" + path + "'");
}

Halfspace load_halfspace(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return read_halfspace(f);
}

}  // namespace halfspace
