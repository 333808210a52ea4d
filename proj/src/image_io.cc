#include "depthwarp/image_io.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace depthwarp {

namespace {

void skip_pnm_whitespace(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

int read_pnm_int(std::istream& in, const std::string& path) {
  skip_pnm_whitespace(in);
  int v = 0;
  if (!(in >> v)) {
    throw ParseError(path + ": malformed PNM header");
  }
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInputError("cannot open " + path + " for writing");
  }
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInputError("cannot open " + path + " for reading");
  }
  return in;
}

}  // namespace

void write_ppm(const std::string& path, const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw InvalidInputError("PPM writer supports 1 or 3 channels");
  }
  std::ofstream out = open_out(path);
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(image.width) * 3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const int src_c = image.channels == 3 ? c : 0;
        const double v = image.at(y, x, src_c);
        const double q = std::round(v * 255.0);
        row[static_cast<size_t>(x) * 3 + c] =
            static_cast<unsigned char>(q < 0.0 ? 0.0 : (q > 255.0 ? 255.0 : q));
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) {
    throw InvalidInputError("failed writing " + path);
  }
}

Image read_ppm(const std::string& path) {
  std::ifstream in = open_in(path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '6') {
    throw ParseError(path + ": not a binary PPM (P6) file");
  }
  const int width = read_pnm_int(in, path);
  const int height = read_pnm_int(in, path);
  const int maxval = read_pnm_int(in, path);
  if (width <= 0 || height <= 0 || maxval != 255) {
    throw ParseError(path + ": unsupported PPM dimensions or maxval");
  }
  in.get();  // single whitespace byte after the header
  Image image(height, width, 3);
  std::vector<unsigned char> row(static_cast<size_t>(width) * 3);
  for (int y = 0; y < height; ++y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size()));
    if (!in) {
      throw ParseError(path + ": truncated PPM pixel data");
    }
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        image.at(y, x, c) = row[static_cast<size_t>(x) * 3 + c] / 255.0;
      }
    }
  }
  return image;
}

void write_pfm(const std::string& path, const ScalarGrid& grid) {
  std::ofstream out = open_out(path);
  out << "Pf\n" << grid.width << " " << grid.height << "\n-1.0\n";
  std::vector<float> row(static_cast<size_t>(grid.width));
  for (int y = grid.height - 1; y >= 0; --y) {  // bottom-up
    for (int x = 0; x < grid.width; ++x) {
      row[static_cast<size_t>(x)] = static_cast<float>(grid.at(y, x));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) {
    throw InvalidInputError("failed writing " + path);
  }
}

ScalarGrid read_pfm(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string magic;
  in >> magic;
  if (magic != "Pf") {
    throw ParseError(path + ": not a single-channel PFM (Pf) file");
  }
  int width = 0;
  int height = 0;
  double scale = 0.0;
  if (!(in >> width >> height >> scale) || width <= 0 || height <= 0 ||
      scale == 0.0) {
    throw ParseError(path + ": malformed PFM header");
  }
  in.get();  // single whitespace byte after the header
  const bool little_endian = scale < 0.0;
  ScalarGrid grid(height, width, 0.0);
  std::vector<unsigned char> row(static_cast<size_t>(width) * sizeof(float));
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size()));
    if (!in) {
      throw ParseError(path + ": truncated PFM pixel data");
    }
    for (int x = 0; x < width; ++x) {
      unsigned char b[4];
      std::memcpy(b, row.data() + static_cast<size_t>(x) * 4, 4);
      if (!little_endian) {
        std::swap(b[0], b[3]);
        std::swap(b[1], b[2]);
      }
      float f;
      std::memcpy(&f, b, 4);
      grid.at(y, x) = static_cast<double>(f);
    }
  }
  return grid;
}

}  // namespace depthwarp
