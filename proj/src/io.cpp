// SPDX-License-Identifier: Apache-2.0

#include "gngs/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "gngs/error.hpp"

namespace gngs
{

namespace
{

static_assert(std::endian::native == std::endian::little, "field files are written in host order");

constexpr char magic[4] = {'G', 'N', 'G', 'S'};
constexpr std::uint32_t format_version = 1;

template <typename T>
void put(std::string &buf, T v)
{
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  buf.append(bytes, sizeof(T));
}

template <typename T>
T take(const std::string &buf, std::size_t &pos)
{
  if (pos + sizeof(T) > buf.size()) throw Error(ErrorCode::io, "field file is truncated");
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

// Every finite double is a dyadic rational; recover it exactly.
Rational exact_rational(double x)
{
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  Rational r(mant);
  e -= 53;
  const Rational two(2);
  for (; e > 0; --e) r *= two;
  for (; e < 0; ++e) r /= two;
  return r;
}

std::filesystem::path with_ext(std::filesystem::path p, const char *ext)
{
  if (p.extension() == ".bin" || p.extension() == ".json") p.replace_extension();
  p += ext;
  return p;
}

}  // namespace

void save_field(const std::filesystem::path &stem, const GridFunction &u, const DilationStructure &weights)
{
  const GridSpec &spec = u.spec();
  if (weights.dims() != spec.dims()) throw Error(ErrorCode::grid_mismatch, "weights and grid dimensions differ");
  std::string buf(magic, 4);
  put<std::uint32_t>(buf, format_version);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(spec.dims()));
  for (auto n : spec.points()) put<std::uint64_t>(buf, n);
  for (double L : spec.half_lengths()) put<double>(buf, L);
  for (const auto &w : weights.weights()) put<double>(buf, to_double(w));
  for (double v : u.values()) put<double>(buf, v);

  const auto bin = with_ext(stem, ".bin");
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open " + bin.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(ErrorCode::io, "write failed for " + bin.string());

  nlohmann::ordered_json side;
  side["format"] = "gngs-field";
  side["version"] = format_version;
  side["dims"] = spec.dims();
  side["points"] = spec.points();
  side["half_lengths"] = spec.half_lengths();
  std::vector<std::string> ws;
  for (const auto &w : weights.weights()) ws.push_back(to_string(w));
  side["weights"] = ws;
  side["count"] = u.size();
  side["sample_type"] = "f64le";
  const auto js = with_ext(stem, ".json");
  std::ofstream jout(js);
  if (!jout) throw Error(ErrorCode::io, "cannot open " + js.string());
  jout << side.dump(2) << '\n';
}

StoredField load_field(const std::filesystem::path &path)
{
  const auto bin = with_ext(path, ".bin");
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + bin.string());
  const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 12 || std::memcmp(buf.data(), magic, 4) != 0)
    throw Error(ErrorCode::io, bin.string() + " is not a field file");
  std::size_t pos = 4;
  if (take<std::uint32_t>(buf, pos) != format_version) throw Error(ErrorCode::io, "unsupported field file version");
  const auto dims = take<std::uint32_t>(buf, pos);
  if (dims < 1 || dims > 3) throw Error(ErrorCode::io, "field file has invalid dimension count");
  std::vector<std::size_t> points(dims);
  std::vector<double> half(dims);
  std::vector<double> wd(dims);
  for (auto &n : points) n = static_cast<std::size_t>(take<std::uint64_t>(buf, pos));
  for (auto &L : half) L = take<double>(buf, pos);
  for (auto &w : wd) w = take<double>(buf, pos);
  GridSpec spec(points, half);
  if (buf.size() - pos != spec.size() * sizeof(double))
    throw Error(ErrorCode::grid_mismatch, "payload holds " + std::to_string((buf.size() - pos) / sizeof(double)) +
                                              " samples, header implies " + std::to_string(spec.size()));
  std::vector<double> values(spec.size());
  std::memcpy(values.data(), buf.data() + pos, values.size() * sizeof(double));

  std::vector<Rational> weights;
  const auto js = with_ext(path, ".json");
  if (std::filesystem::exists(js)) {
    std::ifstream jin(js);
    nlohmann::json side;
    try {
      side = nlohmann::json::parse(jin);
      if (side.at("points").get<std::vector<std::size_t>>() != points ||
          side.at("count").get<std::size_t>() != spec.size())
        throw Error(ErrorCode::grid_mismatch, "sidecar " + js.string() + " disagrees with the binary header");
      for (const auto &w : side.at("weights")) weights.push_back(parse_rational(w.get<std::string>()));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::io, "malformed sidecar " + js.string() + ": " + e.what());
    }
    if (weights.size() != dims) throw Error(ErrorCode::grid_mismatch, "sidecar weight count differs from header");
    for (std::size_t j = 0; j < dims; ++j)
      if (to_double(weights[j]) != wd[j]) throw Error(ErrorCode::grid_mismatch, "sidecar weights disagree with header");
  } else {
    for (double w : wd) weights.push_back(exact_rational(w));
  }
  return {GridFunction(std::move(spec), std::move(values)), DilationStructure(std::move(weights))};
}

}  // namespace gngs
