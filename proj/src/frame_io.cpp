#include "sweatpp/frame_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sweatpp {

namespace {

int next_pgm_token(std::ifstream& in, const std::string& path) {
  // Skips whitespace and # comments, then reads one nonnegative integer.
  for (;;) {
    const int c = in.peek();
    if (c == EOF)
      throw std::runtime_error(path + ": truncated PGM header");
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    break;
  }
  int value = 0;
  if (!(in >> value) || value < 0)
    throw std::runtime_error(path + ": bad PGM header token");
  return value;
}

}  // namespace

Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5')
    throw std::runtime_error(path + ": not a binary (P5) PGM file");
  const int width = next_pgm_token(in, path);
  const int height = next_pgm_token(in, path);
  const int maxval = next_pgm_token(in, path);
  if (width < 1 || height < 1)
    throw std::runtime_error(path + ": bad PGM dimensions");
  if (maxval < 1 || maxval > 255)
    throw std::runtime_error(path + ": only 8-bit PGM is supported");
  in.get();  // the single whitespace byte before the raster

  Image image;
  image.height = static_cast<std::size_t>(height);
  image.width = static_cast<std::size_t>(width);
  std::vector<unsigned char> raw(image.height * image.width);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw std::runtime_error(path + ": truncated PGM raster");
  image.pixels.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    image.pixels[i] = static_cast<double>(raw[i]) / maxval;
  return image;
}

void save_pgm(const std::string& path, const Image& image) {
  if (image.pixels.size() != image.height * image.width)
    throw std::invalid_argument("malformed image");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write " + path);
  std::fprintf(f, "P5\n%zu %zu\n255\n", image.width, image.height);
  std::vector<unsigned char> raw(image.pixels.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = std::clamp(image.pixels[i], 0.0, 1.0);
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  std::fwrite(raw.data(), 1, raw.size(), f);
  std::fclose(f);
}

FrameStack load_frame_stack(const std::string& path) {
  namespace fs = std::filesystem;
  FrameStack stack;
  if (fs::is_directory(path)) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      if (name.size() > 4 && name.substr(name.size() - 4) == ".pgm")
        files.push_back(entry.path().string());
    }
    if (files.empty())
      throw std::runtime_error(path + ": no .pgm frames found");
    std::sort(files.begin(), files.end());
    for (std::size_t t = 0; t < files.size(); ++t) {
      const Image frame = load_pgm(files[t]);
      if (t == 0) {
        stack.height = frame.height;
        stack.width = frame.width;
        stack.frames = files.size();
        stack.data.resize(stack.frames * stack.height * stack.width);
      } else if (frame.height != stack.height ||
                 frame.width != stack.width) {
        throw std::runtime_error(files[t] + ": frame size differs");
      }
      float* dst = stack.data.data() + t * stack.height * stack.width;
      for (std::size_t i = 0; i < frame.pixels.size(); ++i)
        dst[i] = static_cast<float>(frame.pixels[i]);
    }
    return stack;
  }

  std::ifstream header_in(path);
  if (!header_in) throw std::runtime_error("cannot open " + path);
  nlohmann::json header;
  try {
    header_in >> header;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": bad stack header JSON: " + e.what());
  }
  for (const char* key : {"T", "H", "W", "dtype", "file"})
    if (!header.contains(key))
      throw std::runtime_error(path + ": stack header missing '" +
                               std::string(key) + "'");
  stack.frames = header["T"].get<std::size_t>();
  stack.height = header["H"].get<std::size_t>();
  stack.width = header["W"].get<std::size_t>();
  if (stack.frames < 1 || stack.height < 1 || stack.width < 1)
    throw std::runtime_error(path + ": bad stack dimensions");
  const std::string dtype = header["dtype"].get<std::string>();
  const fs::path raw_path =
      fs::path(path).parent_path() / header["file"].get<std::string>();

  std::ifstream raw(raw_path, std::ios::binary);
  if (!raw) throw std::runtime_error("cannot open " + raw_path.string());
  const std::size_t count = stack.frames * stack.height * stack.width;
  stack.data.resize(count);
  if (dtype == "u8") {
    std::vector<unsigned char> bytes(count);
    raw.read(reinterpret_cast<char*>(bytes.data()),
             static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(raw.gcount()) != count)
      throw std::runtime_error(raw_path.string() + ": truncated raw stack");
    for (std::size_t i = 0; i < count; ++i)
      stack.data[i] = static_cast<float>(bytes[i]) / 255.0f;
  } else if (dtype == "f32") {
    raw.read(reinterpret_cast<char*>(stack.data.data()),
             static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(raw.gcount()) !=
        count * sizeof(float))
      throw std::runtime_error(raw_path.string() + ": truncated raw stack");
  } else {
    throw std::runtime_error(path + ": dtype must be 'u8' or 'f32'");
  }
  return stack;
}

}  // namespace sweatpp
