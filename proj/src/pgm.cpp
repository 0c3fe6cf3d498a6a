#include "amoeba/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace amoeba {

namespace {

// Next whitespace-separated token, skipping '#' comments per the PNM spec.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      break;
    }
  }
  while ((c = in.get()) != EOF && !std::isspace(c) && c != '#')
    tok.push_back(static_cast<char>(c));
  if (c == '#') in.unget();
  return tok;
}

long parse_header_int(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  if (tok.empty()) throw std::runtime_error(std::string("PGM parse error: missing ") + what);
  try {
    size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("PGM parse error: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

ScalarField load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open PGM file: " + path);

  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5")
    throw std::runtime_error("PGM parse error: unsupported magic '" + magic +
                             "' (only P2/P5 greyscale)");
  const long w = parse_header_int(in, "width");
  const long h = parse_header_int(in, "height");
  const long maxval = parse_header_int(in, "maxval");
  if (w < 3 || h < 3 || w > 1 << 20 || h > 1 << 20)
    throw std::runtime_error("PGM parse error: bad dimensions");
  if (maxval <= 0 || maxval > 65535)
    throw std::runtime_error("PGM parse error: maxval out of range");

  ScalarField f(static_cast<int>(w), static_cast<int>(h));
  const std::size_t n = f.values.size();
  if (magic == "P2") {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = parse_header_int(in, "sample");
      if (v < 0 || v > maxval)
        throw std::runtime_error("PGM parse error: sample out of range");
      f.values[i] = static_cast<double>(v);
    }
  } else {
    // exactly one whitespace byte separates the header from the payload
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(n * bytes);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw std::runtime_error("PGM I/O error: truncated payload in " + path);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = bytes == 1
                             ? buf[i]
                             : (static_cast<unsigned>(buf[2 * i]) << 8) | buf[2 * i + 1];
      f.values[i] = static_cast<double>(v);
    }
  }
  f.validate();
  return f;
}

void save_pgm(const std::string& path, const ScalarField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write PGM file: " + path);
  out << "P5\n" << field.width << " " << field.height << "\n255\n";
  std::vector<unsigned char> buf(field.values.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double v = std::clamp(field.values[i], 0.0, 255.0);
    buf[i] = static_cast<unsigned char>(std::lround(v));
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("PGM I/O error writing " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out << buf << (i + 1 < row.size() ? "," : "\n");
    }
  }
  if (!out) throw std::runtime_error("CSV I/O error writing " + path);
}

}  // namespace amoeba
