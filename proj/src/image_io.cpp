#include "qpipe/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

#include "qpipe/errors.hpp"

namespace qpipe::io {

namespace {

std::string lowercase_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

// Next whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string token;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(c);
  }
  if (token.empty()) throw ParseError("truncated PGM header");
  return token;
}

std::size_t pgm_number(std::istream& in, const char* what) {
  const std::string token = pgm_token(in);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("bad PGM ") + what + ": '" + token + "'");
  }
  return value;
}

double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
  while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ImageFormat format_for_path(const std::filesystem::path& path) {
  const std::string ext = lowercase_extension(path);
  if (ext == ".pgm") return ImageFormat::Pgm;
  if (ext == ".csv") return ImageFormat::Csv;
  throw ArgumentError("unsupported image extension '" + ext + "' (use .pgm or .csv)");
}

Image read_pgm(std::istream& in) {
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") throw ParseError("not a PGM file (magic '" + magic + "')");
  const std::size_t width = pgm_number(in, "width");
  const std::size_t height = pgm_number(in, "height");
  const std::size_t maxval = pgm_number(in, "maxval");
  if (width == 0 || height == 0) throw ParseError("PGM has zero size");
  if (maxval == 0 || maxval > 65535) throw ParseError("PGM maxval must be in [1, 65535]");

  std::vector<double> pixels(width * height);
  if (magic == "P2") {
    for (double& p : pixels) {
      const std::size_t v = pgm_number(in, "pixel");
      if (v > maxval) throw ParseError("PGM pixel exceeds maxval");
      p = static_cast<double>(v);
    }
  } else {
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(pixels.size() * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw ParseError("truncated P5 data");
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const std::size_t v = bytes == 1 ? raw[i] : (std::size_t{raw[2 * i]} << 8) | raw[2 * i + 1];
      if (v > maxval) throw ParseError("PGM pixel exceeds maxval");
      pixels[i] = static_cast<double>(v);
    }
  }
  return Image(width, height, std::move(pixels), static_cast<int>(std::bit_width(maxval)));
}

Image read_csv_image(std::istream& in) {
  std::vector<double> pixels;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::string_view rest = line;
    while (true) {
      const std::size_t comma = rest.find(',');
      pixels.push_back(parse_double(rest.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (height == 0) {
      width = count;
    } else if (count != width) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                       " values, got " + std::to_string(count));
    }
    ++height;
  }
  if (height == 0) throw ParseError("CSV image is empty");
  return Image(width, height, std::move(pixels));
}

Image read_image(const std::filesystem::path& path) {
  const ImageFormat format = format_for_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  Image image = format == ImageFormat::Pgm ? read_pgm(in) : read_csv_image(in);
  image.validate();
  return image;
}

void write_pgm(std::ostream& out, const Image& image) {
  image.validate();
  double max_pixel = 1.0;
  for (double p : image.pixels) {
    if (p != std::floor(p)) throw ArgumentError("PGM output needs integer intensities; use .csv");
    max_pixel = std::max(max_pixel, p);
  }
  double maxval = max_pixel;
  if (image.bit_depth && *image.bit_depth >= 1 && *image.bit_depth <= 16) {
    maxval = std::max(maxval, std::ldexp(1.0, *image.bit_depth) - 1.0);
  }
  if (maxval > 65535.0) throw ArgumentError("PGM output supports intensities up to 65535");
  out << "P2\n" << image.width << ' ' << image.height << '\n'
      << static_cast<unsigned>(maxval) << '\n';
  for (std::size_t r = 0; r < image.height; ++r) {
    for (std::size_t c = 0; c < image.width; ++c) {
      if (c) out << ' ';
      out << static_cast<unsigned>(image.at(r, c));
    }
    out << '\n';
  }
}

void write_csv_grid(std::ostream& out, std::size_t width, std::size_t height,
                    const std::vector<double>& values) {
  if (values.size() != width * height) throw ArgumentError("grid size does not match width*height");
  char buf[32];
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", values[r * width + c]);
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_image(const std::filesystem::path& path, const Image& image) {
  std::ostringstream os;
  if (format_for_path(path) == ImageFormat::Pgm) {
    write_pgm(os, image);
  } else {
    image.validate();
    write_csv_grid(os, image.width, image.height, image.pixels);
  }
  write_file_atomic(path, os.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace qpipe::io
