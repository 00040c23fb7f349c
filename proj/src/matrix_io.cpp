#include "pivotkit/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace pivotkit {

namespace {

struct Header {
   bool coordinate = false;
   bool symmetric = false;
   std::optional<std::pair<Index, Index>> supernode;
   Index rows = 0;
   Index cols = 0;
   Index entries = 0;
};

std::string lower(std::string s) {
   std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
   return s;
}

[[noreturn]] void malformed(const std::string& what) {
   throw FormatError("malformed header: " + what);
}

Header read_header(std::istream& in) {
   Header h;
   std::string line;
   if (!std::getline(in, line)) malformed("empty input");
   std::istringstream banner(line);
   std::string tag, object, format, field, symmetry;
   banner >> tag >> object >> format >> field >> symmetry;
   if (tag != "%%MatrixMarket" || lower(object) != "matrix") malformed("missing %%MatrixMarket matrix banner");
   format = lower(format);
   field = lower(field);
   symmetry = lower(symmetry);
   if (format != "array" && format != "coordinate") malformed("unknown format '" + format + "'");
   if (field != "real" && field != "integer" && field != "double")
      malformed("unsupported field '" + field + "'");
   if (symmetry != "general" && symmetry != "symmetric")
      malformed("unsupported symmetry '" + symmetry + "'");
   h.coordinate = format == "coordinate";
   h.symmetric = symmetry == "symmetric";

   while (std::getline(in, line)) {
      if (line.rfind("%%supernode", 0) == 0) {
         std::istringstream s(line.substr(11));
         Index n = 0, p = 0;
         if (!(s >> n >> p) || n < 1 || p < 1 || p > n) malformed("bad %%supernode line");
         h.supernode.emplace(n, p);
         continue;
      }
      if (line.empty() || line[0] == '%') continue;
      std::istringstream s(line);
      if (!(s >> h.rows >> h.cols)) malformed("bad size line");
      if (h.coordinate && !(s >> h.entries)) malformed("coordinate size line needs an entry count");
      if (h.rows < 0 || h.cols < 0 || h.entries < 0) malformed("negative size");
      if (h.symmetric && h.rows != h.cols)
         throw FormatError("dimension mismatch: symmetric matrix must be square");
      return h;
   }
   malformed("missing size line");
}

double next_value(std::istream& in) {
   double v = 0.0;
   if (!(in >> v)) throw FormatError("dimension mismatch: fewer values than the size line declares");
   return v;
}

void require_end(std::istream& in) {
   std::string rest;
   if (in >> rest) throw FormatError("dimension mismatch: more values than the size line declares");
}

DenseMatrix read_body(std::istream& in, const Header& h) {
   DenseMatrix a(h.rows, h.cols);
   if (!h.coordinate) {
      for (Index j = 0; j < h.cols; ++j)
         for (Index i = h.symmetric ? j : 0; i < h.rows; ++i) {
            a(i, j) = next_value(in);
            if (h.symmetric) a(j, i) = a(i, j);
         }
      require_end(in);
      return a;
   }
   std::map<std::pair<Index, Index>, double> seen;
   for (Index e = 0; e < h.entries; ++e) {
      Index i = 0, j = 0;
      if (!(in >> i >> j)) throw FormatError("dimension mismatch: fewer entries than declared");
      double v = next_value(in);
      if (i < 1 || i > h.rows || j < 1 || j > h.cols)
         throw FormatError("dimension mismatch: entry (" + std::to_string(i) + "," +
               std::to_string(j) + ") outside the matrix");
      --i;
      --j;
      if (h.symmetric) {
         auto key = std::minmax(i, j);
         auto [it, fresh] = seen.emplace(std::pair(key.first, key.second), v);
         if (!fresh && it->second != v)
            throw FormatError("non-symmetric: entries (" + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + ") and its mirror differ");
         a(i, j) = v;
         a(j, i) = v;
      } else {
         a(i, j) += v;
      }
   }
   require_end(in);
   return a;
}

void write_values(std::ostream& out, const DenseMatrix& a) {
   auto old = out.precision(17);
   for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i) out << a(i, j) << '\n';
   out.precision(old);
}

std::ifstream open_in(const std::string& path) {
   std::ifstream f(path);
   if (!f) throw Error("cannot open " + path);
   return f;
}

std::ofstream open_out(const std::string& path) {
   std::ofstream f(path);
   if (!f) throw Error("cannot open " + path + " for writing");
   return f;
}

} // namespace

void write_supernode(std::ostream& out, const SupernodeMatrix& m) {
   out << "%%MatrixMarket matrix array real general\n";
   out << "%%supernode " << m.n() << ' ' << m.p() << '\n';
   out << m.n() << ' ' << m.p() << '\n';
   write_values(out, m.values());
}

SupernodeMatrix read_supernode(std::istream& in) {
   Header h = read_header(in);
   if (!h.supernode) malformed("missing %%supernode line");
   if (h.coordinate || h.symmetric) malformed("supernode files are array general");
   if (h.rows != h.supernode->first || h.cols != h.supernode->second)
      throw FormatError("dimension mismatch: size line disagrees with %%supernode");
   SupernodeMatrix m(read_body(in, h));
   m.require_finite();
   return m;
}

DenseMatrix read_matrix_market(std::istream& in) {
   Header h = read_header(in);
   return read_body(in, h);
}

DenseMatrix read_symmetric_system(std::istream& in) {
   DenseMatrix a = read_matrix_market(in);
   if (a.rows() != a.cols()) throw FormatError("dimension mismatch: system matrix is not square");
   for (Index j = 0; j < a.cols(); ++j)
      for (Index i = j + 1; i < a.rows(); ++i)
         if (a(i, j) != a(j, i))
            throw FormatError("non-symmetric: a(" + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + ") differs from its mirror");
   return a;
}

void write_matrix_market(std::ostream& out, const DenseMatrix& a) {
   out << "%%MatrixMarket matrix array real general\n";
   out << a.rows() << ' ' << a.cols() << '\n';
   write_values(out, a);
}

void write_vector(std::ostream& out, std::span<const double> v) {
   write_matrix_market(out, DenseMatrix(Index(v.size()), 1, std::vector<double>(v.begin(), v.end())));
}

std::vector<double> read_vector(std::istream& in) {
   if (in.peek() == '%') {
      DenseMatrix a = read_matrix_market(in);
      if (a.cols() != 1) throw FormatError("dimension mismatch: vector must have one column");
      return a.values();
   }
   std::vector<double> v;
   double x = 0.0;
   while (in >> x) v.push_back(x);
   if (!in.eof()) throw FormatError("malformed header: vector holds a non-numeric token");
   return v;
}

void save_supernode(const std::string& path, const SupernodeMatrix& m) {
   auto f = open_out(path);
   write_supernode(f, m);
}

SupernodeMatrix load_supernode(const std::string& path) {
   auto f = open_in(path);
   return read_supernode(f);
}

DenseMatrix load_symmetric_system(const std::string& path) {
   auto f = open_in(path);
   return read_symmetric_system(f);
}

std::vector<double> load_vector(const std::string& path) {
   auto f = open_in(path);
   return read_vector(f);
}

void save_vector(const std::string& path, std::span<const double> v) {
   auto f = open_out(path);
   write_vector(f, v);
}

} // namespace pivotkit
