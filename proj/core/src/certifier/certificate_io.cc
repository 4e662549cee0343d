/*
   Copyright 2026 The qdelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "qdelay/certifier/certificate_io.h"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qdelay/poly/text.h"

namespace qdelay::certifier {
namespace {

void write_matrix(std::ostream& out, const char* name, const RationalMatrix& m) {
  out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << qdelay::to_string(m(i, j));
    out << '\n';
  }
}

class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  // Next non-empty line split into its first word and the rest.
  bool next(std::string& key, std::string& rest) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      std::istringstream ls(line);
      ls >> key;
      std::getline(ls >> std::ws, rest);
      return true;
    }
    return false;
  }

  void expect(const std::string& want, std::string& rest) {
    std::string key;
    if (!next(key, rest)) throw error("unexpected end of file, expected '" + want + "'");
    if (key != want) throw error("expected '" + want + "', found '" + key + "'");
  }

  std::invalid_argument error(const std::string& m) const {
    return std::invalid_argument("line " + std::to_string(line_) + ": " + m);
  }

  template <typename F>
  auto guard(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      throw error(what);
    }
  }

  std::size_t count(const std::string& s) {
    return guard([&] {
      std::size_t pos = 0;
      const long v = std::stol(s, &pos);
      if (pos != s.size() || v < 0 || v > 100000) throw std::invalid_argument("bad count '" + s + "'");
      return static_cast<std::size_t>(v);
    });
  }

  std::vector<std::string> words(const std::string& s) {
    std::istringstream ws(s);
    std::vector<std::string> out;
    std::string w;
    while (ws >> w) out.push_back(w);
    return out;
  }

  RationalMatrix matrix(const std::string& name) {
    std::string rest;
    expect(name, rest);
    const auto dims = words(rest);
    if (dims.size() != 2) throw error("expected '" + name + " <rows> <cols>'");
    RationalMatrix m(count(dims[0]), count(dims[1]));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::string first, tail;
      if (!next(first, tail)) throw error("unexpected end of file in matrix " + name);
      auto row = words(first + " " + tail);
      if (row.size() != m.cols()) throw error("matrix " + name + " row has " + std::to_string(row.size()) + " entries");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = guard([&] { return parse_rational(row[j]); });
    }
    return m;
  }

 private:
  std::istringstream in_;
  int line_ = 0;
};

}  // namespace

void write_certificate(const StabilityCertificate& c, std::ostream& out) {
  const std::size_t a = 4 * c.n;
  out << "qdelay-certificate 1\n";
  out << "fingerprint " << c.fingerprint << '\n';
  out << "n " << c.n << '\n';
  out << "tau " << qdelay::to_string(c.tau) << '\n';
  out << "epsilon " << qdelay::to_string(c.epsilon) << '\n';
  out << "V0 " << qdelay::to_string(c.V0) << '\n';
  out << "V1 " << qdelay::to_string(c.V1) << '\n';
  write_matrix(out, "S", c.S);
  write_matrix(out, "R", c.R);
  write_matrix(out, "T", c.T);
  out << "target " << qdelay::to_string(c.identity.target) << '\n';
  for (const auto& t : c.identity.multiplier_terms) out << "term " << t.multiplier << ' ' << qdelay::to_string(t.domain) << '\n';
  for (auto r : c.identity.remainder) out << "remainder " << r << '\n';
  for (const auto& item : c.items) {
    out << "item " << item.label << ' ' << item.basis.size() << ' ' << a << '\n';
    for (const auto& m : item.basis) {
      out << "basis";
      for (int e : m.exponents()) out << ' ' << e;
      out << '\n';
    }
    for (std::size_t i = 0; i < item.gram.rows(); ++i) {
      out << "gram";
      for (std::size_t j = 0; j < item.gram.cols(); ++j) out << ' ' << qdelay::to_string(item.gram(i, j));
      out << '\n';
    }
  }
  out << "end\n";
}

std::string format_certificate(const StabilityCertificate& cert) {
  std::ostringstream o;
  write_certificate(cert, o);
  return o.str();
}

StabilityCertificate parse_certificate(const std::string& text) {
  Reader r(text);
  StabilityCertificate c;
  std::string rest;
  r.expect("qdelay-certificate", rest);
  if (rest != "1") throw r.error("unsupported certificate version '" + rest + "'");
  r.expect("fingerprint", rest);
  c.fingerprint = rest;
  r.expect("n", rest);
  c.n = r.count(rest);
  if (c.n == 0) throw r.error("n must be positive");
  const std::size_t a = 4 * c.n;
  r.expect("tau", rest);
  c.tau = r.guard([&] { return parse_rational(rest); });
  r.expect("epsilon", rest);
  c.epsilon = r.guard([&] { return parse_rational(rest); });
  r.expect("V0", rest);
  c.V0 = r.guard([&] { return parse_polynomial(rest, c.n); });
  r.expect("V1", rest);
  c.V1 = r.guard([&] { return parse_polynomial(rest, c.n); });
  c.S = r.matrix("S");
  c.R = r.matrix("R");
  c.T = r.matrix("T");
  r.expect("target", rest);
  c.identity.target = r.guard([&] { return parse_polynomial(rest, a); });

  std::string key;
  bool ended = false;
  sos::SosCertificateItem* item = nullptr;
  std::size_t want_rows = 0;
  std::vector<std::vector<Rational>> rows;
  auto close_item = [&] {
    if (!item) return;
    if (item->basis.size() != want_rows || rows.size() != want_rows)
      throw r.error("item '" + item->label + "' is incomplete");
    item->gram = RationalMatrix(want_rows, want_rows);
    for (std::size_t i = 0; i < want_rows; ++i)
      for (std::size_t j = 0; j < want_rows; ++j) item->gram(i, j) = rows[i][j];
    item->polynomial = sos::gram_polynomial(item->basis, item->gram, a);
    item = nullptr;
    rows.clear();
  };
  while (r.next(key, rest)) {
    if (key == "term") {
      if (!c.items.empty()) throw r.error("'term' after the first item");
      std::istringstream ts(rest);
      std::string idx;
      ts >> idx;
      std::string poly;
      std::getline(ts >> std::ws, poly);
      c.identity.multiplier_terms.push_back(
          {r.guard([&] { return parse_polynomial(poly, a); }), r.count(idx)});
    } else if (key == "remainder") {
      if (!c.items.empty()) throw r.error("'remainder' after the first item");
      c.identity.remainder.push_back(r.count(rest));
    } else if (key == "item") {
      close_item();
      const auto w = r.words(rest);
      if (w.size() != 3) throw r.error("expected 'item <label> <size> <arity>'");
      if (r.count(w[2]) != a) throw r.error("item arity must be " + std::to_string(a));
      c.items.push_back({});
      item = &c.items.back();
      item->label = w[0];
      want_rows = r.count(w[1]);
      if (want_rows == 0) throw r.error("empty Gram basis");
    } else if (key == "basis") {
      if (!item) throw r.error("'basis' outside an item");
      if (!rows.empty()) throw r.error("'basis' after 'gram'");
      const auto w = r.words(rest);
      if (w.size() != a) throw r.error("basis monomial needs " + std::to_string(a) + " exponents");
      std::vector<int> ex;
      for (const auto& e : w) ex.push_back(static_cast<int>(r.count(e)));
      if (item->basis.size() == want_rows) throw r.error("too many basis monomials");
      item->basis.emplace_back(std::move(ex));
    } else if (key == "gram") {
      if (!item) throw r.error("'gram' outside an item");
      const auto w = r.words(rest);
      if (w.size() != want_rows) throw r.error("Gram row needs " + std::to_string(want_rows) + " entries");
      if (rows.size() == want_rows) throw r.error("too many Gram rows");
      std::vector<Rational> row;
      for (const auto& e : w) row.push_back(r.guard([&] { return parse_rational(e); }));
      rows.push_back(std::move(row));
    } else if (key == "end") {
      close_item();
      ended = true;
      break;
    } else {
      throw r.error("unknown record '" + key + "'");
    }
  }
  if (!ended) throw r.error("missing 'end'");
  if (r.next(key, rest)) throw r.error("trailing content after 'end'");
  return c;
}

StabilityCertificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open certificate '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_certificate(ss.str());
}

}  // namespace qdelay::certifier
