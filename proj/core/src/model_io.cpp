#include "trmf/model_io.hpp"

#include <zlib.h>

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <map>
#include <sstream>
#include <vector>

#include "trmf/csv.hpp"
#include "trmf/error.hpp"

namespace trmf {

namespace {

constexpr std::string_view kMagic = "TRMF1";

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

void put_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32_le(std::string_view in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[i])) << (8 * i);
  return v;
}

void put_f64_le(std::string& out, double d) {
  auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
}

double get_f64_le(const char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return std::bit_cast<double>(bits);
}

struct Block {
  std::string name;
  const DenseMatrix* matrix;
};

std::string encode_parts(std::string_view kind, const std::string& extra_header,
                         const std::vector<Block>& blocks) {
  std::string out;
  out += kMagic;
  out += "\nkind ";
  out += kind;
  out += '\n';
  out += extra_header;
  for (const auto& b : blocks)
    out += "block " + b.name + " " + std::to_string(b.matrix->rows()) + " " +
           std::to_string(b.matrix->cols()) + "\n";
  out += "payload\n";
  for (const auto& b : blocks)
    for (double v : b.matrix->data()) put_f64_le(out, v);
  put_u32_le(out, crc32_of(out));
  return out;
}

std::string trmf_header(const TrmfModel& m) {
  const Hyperparams& h = m.hyper;
  std::string s;
  s += "n " + std::to_string(m.f_mat.rows()) + "\n";
  s += "t " + std::to_string(m.x_mat.cols()) + "\n";
  s += "k " + std::to_string(m.x_mat.rows()) + "\n";
  s += "lags";
  for (std::size_t l : m.ar.lags.lags()) s += " " + std::to_string(l);
  s += "\n";
  s += "hyper " + std::to_string(h.k) + " " + format_double(h.lambda_f) + " " +
       format_double(h.lambda_x) + " " + format_double(h.lambda_w) + " " + format_double(h.eta) +
       " " + std::to_string(h.max_outer_iters) + " " + format_double(h.rel_tol) + " " +
       format_double(h.cg_tol) + " " + std::to_string(h.cg_max_iter) + " " +
       std::to_string(h.seed) + "\n";
  return s;
}

DenseMatrix trace_matrix(const TrmfModel& m) {
  DenseMatrix tr(m.fit_trace.size(), 2);
  for (std::size_t i = 0; i < m.fit_trace.size(); ++i) {
    tr(i, 0) = static_cast<double>(m.fit_trace[i].iteration);
    tr(i, 1) = m.fit_trace[i].objective;
  }
  return tr;
}

std::string encode_trmf(std::string_view kind, const TrmfModel& m) {
  const DenseMatrix tr = trace_matrix(m);
  return encode_parts(kind, trmf_header(m),
                      {{"F", &m.f_mat}, {"X", &m.x_mat}, {"W", &m.ar.w}, {"trace", &tr}});
}

[[noreturn]] void corrupt(const std::string& why) { fail(ErrorCode::kCorruptFile, why); }

template <typename T>
T parse_number(std::string_view tok) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
    corrupt("bad number '" + std::string(tok) + "' in header");
  return v;
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

struct Parsed {
  std::string kind;
  std::map<std::string, std::vector<std::string_view>, std::less<>> fields;
  std::map<std::string, DenseMatrix, std::less<>> blocks;
};

Parsed parse(std::string_view bytes) {
  const auto first_nl = bytes.find('\n');
  const std::string_view magic = bytes.substr(0, first_nl);
  if (magic != kMagic) {
    if (magic.substr(0, 4) == "TRMF")
      fail(ErrorCode::kVersionMismatch, "unsupported model format '" + std::string(magic) + "'");
    corrupt("not a TRMF model file");
  }
  if (bytes.size() < 4 || first_nl == std::string_view::npos) corrupt("file is truncated");
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  if (crc32_of(body) != get_u32_le(bytes.substr(bytes.size() - 4)))
    corrupt("checksum mismatch (truncated or modified file)");

  Parsed p;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> layout;
  std::size_t pos = first_nl + 1;
  bool saw_payload = false;
  while (pos < body.size()) {
    const auto nl = body.find('\n', pos);
    if (nl == std::string_view::npos) corrupt("header is not terminated");
    const auto w = words(body.substr(pos, nl - pos));
    pos = nl + 1;
    if (w.empty()) corrupt("empty header line");
    if (w[0] == "payload") {
      saw_payload = true;
      break;
    }
    if (w[0] == "kind" && w.size() == 2) {
      p.kind = std::string(w[1]);
    } else if (w[0] == "block") {
      if (w.size() != 4) corrupt("malformed block line");
      layout.push_back({std::string(w[1]),
                        {parse_number<std::size_t>(w[2]), parse_number<std::size_t>(w[3])}});
    } else {
      p.fields[std::string(w[0])] = std::vector<std::string_view>(w.begin() + 1, w.end());
    }
  }
  if (!saw_payload) corrupt("missing payload marker");

  std::size_t expected = 0;
  for (const auto& [name, dims] : layout) expected += dims.first * dims.second * 8;
  if (body.size() - pos != expected) corrupt("payload size does not match the block layout");
  for (const auto& [name, dims] : layout) {
    std::vector<double> data(dims.first * dims.second);
    for (double& v : data) {
      v = get_f64_le(body.data() + pos);
      pos += 8;
    }
    p.blocks.emplace(name, DenseMatrix(dims.first, dims.second, std::move(data)));
  }
  return p;
}

const DenseMatrix& block(const Parsed& p, std::string_view name) {
  auto it = p.blocks.find(name);
  if (it == p.blocks.end()) corrupt("missing block '" + std::string(name) + "'");
  return it->second;
}

const std::vector<std::string_view>& field(const Parsed& p, std::string_view name) {
  auto it = p.fields.find(name);
  if (it == p.fields.end()) corrupt("missing header field '" + std::string(name) + "'");
  return it->second;
}

TrmfModel decode_trmf(const Parsed& p) {
  std::vector<std::size_t> lags;
  for (auto tok : field(p, "lags")) lags.push_back(parse_number<std::size_t>(tok));
  const auto& hv = field(p, "hyper");
  if (hv.size() != 10) corrupt("hyper line needs 10 values");
  Hyperparams h;
  h.k = parse_number<std::size_t>(hv[0]);
  h.lambda_f = parse_number<double>(hv[1]);
  h.lambda_x = parse_number<double>(hv[2]);
  h.lambda_w = parse_number<double>(hv[3]);
  h.eta = parse_number<double>(hv[4]);
  h.max_outer_iters = parse_number<std::size_t>(hv[5]);
  h.rel_tol = parse_number<double>(hv[6]);
  h.cg_tol = parse_number<double>(hv[7]);
  h.cg_max_iter = parse_number<std::size_t>(hv[8]);
  h.seed = parse_number<std::uint64_t>(hv[9]);

  const std::size_t n = parse_number<std::size_t>(field(p, "n").at(0));
  const std::size_t t = parse_number<std::size_t>(field(p, "t").at(0));
  const std::size_t k = parse_number<std::size_t>(field(p, "k").at(0));
  const DenseMatrix& f = block(p, "F");
  const DenseMatrix& x = block(p, "X");
  const DenseMatrix& w = block(p, "W");
  const DenseMatrix& tr = block(p, "trace");
  if (f.rows() != n || f.cols() != k || x.rows() != k || x.cols() != t || w.rows() != k ||
      tr.cols() != 2)
    corrupt("block dimensions disagree with the header");

  TrmfModel m{f, x, ARWeights(LagSet(std::move(lags)), w), h, {}};
  for (std::size_t i = 0; i < tr.rows(); ++i)
    m.fit_trace.push_back({static_cast<std::size_t>(tr(i, 0)), tr(i, 1)});
  return m;
}

}  // namespace

std::string model_kind(const AnyModel& model) {
  if (std::holds_alternative<TrmfModel>(model)) return "trmf";
  return std::string(baseline_name(std::get<BaselineModel>(model).kind));
}

std::string encode_model(const AnyModel& model) {
  if (const auto* m = std::get_if<TrmfModel>(&model)) return encode_trmf("trmf", *m);
  const auto& b = std::get<BaselineModel>(model);
  switch (b.kind) {
    case BaselineKind::kTcf:
      return encode_trmf("tcf", std::get<TrmfModel>(b.payload));
    case BaselineKind::kMean: {
      const auto& m = std::get<MeanModel>(b.payload);
      const DenseMatrix info(1, 3, {m.mean, static_cast<double>(m.n), static_cast<double>(m.t_count)});
      return encode_parts("mean", "", {{"mean", &info}});
    }
    case BaselineKind::kAr1: {
      const auto& m = std::get<Ar1Model>(b.payload);
      const DenseMatrix last(m.last.size(), 1, m.last);
      return encode_parts("ar1", "", {{"A", &m.transition}, {"last", &last}});
    }
    case BaselineKind::kSvdAr1: {
      const auto& m = std::get<SvdAr1Model>(b.payload);
      return encode_parts("svd_ar1", "", {{"F", &m.f_mat}, {"X", &m.x_mat}, {"A", &m.transition}});
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown model kind");
}

AnyModel decode_model(std::string_view bytes) {
  const Parsed p = parse(bytes);
  if (p.kind == "trmf") return decode_trmf(p);
  if (p.kind == "tcf") return BaselineModel{BaselineKind::kTcf, decode_trmf(p)};
  if (p.kind == "mean") {
    const DenseMatrix& info = block(p, "mean");
    if (info.size() != 3) corrupt("mean block must hold 3 values");
    return BaselineModel{BaselineKind::kMean,
                         MeanModel{info(0, 0), static_cast<std::size_t>(info(0, 1)),
                                   static_cast<std::size_t>(info(0, 2))}};
  }
  if (p.kind == "ar1") {
    const DenseMatrix& last = block(p, "last");
    return BaselineModel{BaselineKind::kAr1, Ar1Model{block(p, "A"), last.storage()}};
  }
  if (p.kind == "svd_ar1")
    return BaselineModel{BaselineKind::kSvdAr1,
                         SvdAr1Model{block(p, "F"), block(p, "X"), block(p, "A")}};
  corrupt("unknown model kind '" + p.kind + "'");
}

void save_any_model(const AnyModel& model, const std::filesystem::path& path) {
  write_file(path, encode_model(model));
}

AnyModel load_any_model(const std::filesystem::path& path) { return decode_model(read_file(path)); }

void save_model(const TrmfModel& model, const std::filesystem::path& path) {
  save_any_model(model, path);
}

TrmfModel load_model(const std::filesystem::path& path) {
  AnyModel any = load_any_model(path);
  if (auto* m = std::get_if<TrmfModel>(&any)) return std::move(*m);
  fail(ErrorCode::kInvalidArgument, path.string() + " holds a '" + model_kind(any) +
                                        "' model, not a TRMF-AR model");
}

}  // namespace trmf
