// Copyright 2026 The revcor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revcor/dsp/wav.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string_view>

#include "revcor/error.hpp"

namespace revcor::dsp {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return std::uint32_t(bytes_[at]) | std::uint32_t(bytes_[at + 1]) << 8 |
           std::uint32_t(bytes_[at + 2]) << 16 |
           std::uint32_t(bytes_[at + 3]) << 24;
  }
  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return std::uint16_t(bytes_[at] | bytes_[at + 1] << 8);
  }
  std::string_view tag(std::size_t at) const {
    need(at, 4);
    return {reinterpret_cast<const char*>(bytes_.data() + at), 4};
  }
  std::size_t size() const { return bytes_.size(); }

 private:
  void need(std::size_t at, std::size_t n) const {
    if (at + n > bytes_.size()) {
      throw Error(Errc::invalid_argument, "truncated WAV data");
    }
  }
  std::span<const std::uint8_t> bytes_;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
}
void put_tag(std::vector<std::uint8_t>& out, std::string_view tag) {
  out.insert(out.end(), tag.begin(), tag.end());
}

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.size() < 12 || r.tag(0) != "RIFF" || r.tag(8) != "WAVE") {
    throw Error(Errc::invalid_argument, "not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_at = 0, data_len = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= r.size()) {
    const auto id = r.tag(pos);
    const std::size_t len = r.u32(pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      format = r.u16(body);
      channels = r.u16(body + 2);
      rate = r.u32(body + 4);
      bits = r.u16(body + 14);
      if (format == kFormatExtensible) {
        if (len < 40) throw Error(Errc::invalid_argument, "bad extensible fmt chunk");
        format = r.u16(body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      data_at = body;
      data_len = std::min(len, r.size() - body);
      have_data = true;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt || !have_data) {
    throw Error(Errc::invalid_argument, "WAV file lacks fmt or data chunk");
  }
  if (channels != 1) {
    throw Error(Errc::invalid_argument, "only mono WAV is supported");
  }
  if (rate == 0) throw Error(Errc::invalid_argument, "WAV sample rate is zero");

  AudioBuffer audio;
  audio.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    audio.samples.resize(data_len / 2);
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
      const auto v = static_cast<std::int16_t>(r.u16(data_at + 2 * i));
      // Inverse of the encoder scale; -32768 maps just below -1 and is clamped.
      audio.samples[i] = std::max(-1.0, v / 32767.0);
    }
  } else if (format == kFormatFloat && bits == 32) {
    audio.samples.resize(data_len / 4);
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
      audio.samples[i] = std::bit_cast<float>(r.u32(data_at + 4 * i));
    }
  } else {
    throw Error(Errc::invalid_argument,
                "unsupported WAV encoding (need PCM16 or float32)");
  }
  return audio;
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio, WavFormat format) {
  check_audio(audio);
  const bool pcm = format == WavFormat::pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block = bits / 8;
  const auto data_len = static_cast<std::uint32_t>(audio.size() * block);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(audio.sample_rate) * block);
  put_u16(out, block);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_len);
  for (double s : audio.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    if (pcm) {
      const auto q = static_cast<std::int16_t>(std::lround(c * 32767.0));
      put_u16(out, static_cast<std::uint16_t>(q));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(c)));
    }
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavFormat format) {
  const auto bytes = encode_wav(audio, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io_error, "short write to " + path.string());
}

}  // namespace revcor::dsp
