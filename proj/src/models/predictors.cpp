// Copyright 2026 The nrvqa Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>

#include "nrvqa/error.h"
#include "nrvqa/models.h"

namespace nrvqa {

namespace {

// Failure reported by an evaluation. `precondition` distinguishes caller
// errors (InvalidArgument) from formula domain violations (DomainError).
struct Status {
  const char* message = nullptr;
  bool precondition = false;

  bool ok() const { return message == nullptr; }
};

constexpr Status kOk{};
constexpr Status domain(const char* message) { return {message, false}; }
constexpr Status precondition(const char* message) { return {message, true}; }

template <std::size_t N>
struct Outcome {
  std::array<double, N> terms{};
  double mos = 1.0;
  double native = 0.0;
};

double clamp_mos(double v) { return std::clamp(v, 1.0, 5.0); }

// ---- G.1070 ---------------------------------------------------------------

constexpr std::array<std::string_view, 5> kG1070Terms = {"I_ofr", "O_fr", "D_FrV", "I_coding", "QV"};

Status evaluate(const StreamFeatures& f, const DisplayParams&, const G1070Coefficients& k, Outcome<5>& o) noexcept {
  const auto& a = k.values;
  const double br = f.bitrate_kbps;
  const double fr = f.framerate_fps;
  if (!(br > 0.0)) return precondition("bitrate_kbps must be positive");
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");
  const double i_ofr = std::clamp(a[0] - a[1] / (1.0 + std::pow(br / a[2], a[3])), 0.0, 4.0);
  const double o_fr = std::clamp(a[4] + a[5] * br, 0.0, 30.0);
  if (o_fr == 0.0) return domain("optimal frame rate O_fr clamps to 0; ln(O_fr) undefined");
  const double d_frv = a[6] + a[7] * br;
  if (d_frv == 0.0) return domain("frame-rate robustness D_FrV is 0");
  const double log_ratio = std::log(fr) - std::log(o_fr);
  const double i_coding = i_ofr * std::exp(-(log_ratio * log_ratio) / (2.0 * d_frv * d_frv));
  const double qv = 1.0 + i_coding;
  o.terms = {i_ofr, o_fr, d_frv, i_coding, qv};
  o.native = qv;
  o.mos = clamp_mos(qv);
  return kOk;
}

// ---- P.1201.1 -------------------------------------------------------------

constexpr std::array<std::string_view, 4> kP1201_1Terms = {"normbr_v", "cpx_video", "Qcod", "QV"};
constexpr double kP1201_1DefaultCpx = 0.5;

Status evaluate(const StreamFeatures& f, const DisplayParams&, const P1201_1Coefficients& k, Outcome<4>& o) noexcept {
  const auto& c = k.values;
  const double br = f.bitrate_kbps;
  const double fr = f.framerate_fps;
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");
  if (br < 0.0) return precondition("bitrate_kbps must be non-negative");
  double cpx = kP1201_1DefaultCpx;
  if (!f.imputed.avg_bytes_per_iframe) {
    if (!(f.avg_bytes_per_iframe > 0.0)) return domain("avg_bytes_per_iframe must be positive");
    cpx = std::min(std::sqrt(br / f.avg_bytes_per_iframe), 1.0);
  }
  const double normbr = br * 8.0 * 30.0 / (1000.0 * std::min(30.0, fr));
  const double scale = c[2] * cpx + c[3];
  if (scale == 0.0) return domain("c3*cpx_video + c4 is 0");
  const double qcod = 4.0 / (1.0 + std::pow(normbr / scale, scale));
  double qv = 5.0 - qcod;
  if (!(fr < 24.0)) qv *= 1.0 + c[0] * cpx - c[1] * cpx * std::log10(1000.0 / fr);
  o.terms = {normbr, cpx, qcod, qv};
  o.native = qv;
  o.mos = clamp_mos(qv);
  return kOk;
}

// ---- P.1201.2 -------------------------------------------------------------

constexpr std::array<std::string_view, 4> kP1201_2Terms = {"bitPerPixel", "cpx_video", "Qcod", "QV"};

Status evaluate(const StreamFeatures& f, const DisplayParams&, const P1201_2Coefficients& k, Outcome<4>& o) noexcept {
  const auto& c = k.values;
  const double pixels = f.pixels_per_frame();
  const double fr = f.framerate_fps;
  if (!(pixels > 0.0)) return precondition("frame resolution must be positive");
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");
  if (f.scenes.empty()) return precondition("scene statistics are required");
  const double bpp = f.bitrate_kbps * 1e6 / (pixels * fr);
  double weighted_gops = 0.0;
  double weighted_bytes = 0.0;
  for (const auto& s : f.scenes) {
    const double wn = s.weight * static_cast<double>(s.gop_count);
    weighted_gops += wn;
    weighted_bytes += s.avg_iframe_bytes * wn;
  }
  if (weighted_bytes == 0.0) return domain("all scene I-frame sizes are 0");
  const double cpx = weighted_gops / weighted_bytes * (pixels * fr / 1000.0);
  const double qcod = c[0] * std::exp(c[1] * bpp) + c[2] * cpx + c[3];
  const double raw = 100.0 - qcod;
  if (std::isnan(raw)) return domain("non-finite Qcod");
  const double qv = std::clamp(raw, 0.0, 100.0);
  o.terms = {bpp, cpx, qcod, qv};
  o.native = qv;
  o.mos = clamp_mos(mos_from_r(qv));
  return kOk;
}

// ---- P.1203.1 Mode 3 ------------------------------------------------------

constexpr std::array<std::string_view, 11> kP1203Terms = {"MOSq", "Dq",  "scaleFactor", "Du", "Dt1", "Dt2",
                                                          "Dt3",  "Dt",  "D",           "Q",  "MOS_tv"};

Status evaluate(const StreamFeatures& f, const DisplayParams& d, const P1203Coefficients& k, Outcome<11>& o) noexcept {
  const auto& v = k.values;
  const double q1 = v[0], q2 = v[1], q3 = v[2], u1 = v[3], u2 = v[4], t1 = v[5], t2 = v[6], t3 = v[7];
  const double fr = f.framerate_fps;
  if (!(f.quant >= 0.0 && f.quant <= 1.0)) return precondition("quant must lie in [0, 1]");
  const double cod_res = f.pixels_per_frame();
  const double dis_res = d.display_pixels();
  if (!(cod_res > 0.0)) return precondition("coded resolution must be positive");
  if (!(dis_res > 0.0)) return precondition("display resolution must be positive");
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");

  const double mosq_raw = q1 + q2 * std::exp(q3 * f.quant);
  if (std::isnan(mosq_raw)) return domain("non-finite MOSq");
  const double mosq = std::clamp(mosq_raw, 1.0, 5.0);
  const double dq = std::clamp(100.0 - r_from_mos(mosq), 0.0, 100.0);
  const double scale_factor = std::max(dis_res / cod_res, 1.0);
  const double du_raw = u1 * std::log10(u2 * (scale_factor - 1.0) + 1.0);
  if (std::isnan(du_raw)) return domain("non-finite Du");
  const double du = std::clamp(du_raw, 0.0, 100.0);
  const double ratio = (t1 - t2 * fr) / (t3 + fr);
  const double dt1 = 100.0 * ratio;
  const double dt2 = dq * ratio;
  const double dt3 = du * ratio;
  const double dt_raw = fr < 24.0 ? dt1 - dt2 - dt3 : 0.0;
  if (std::isnan(dt_raw)) return domain("non-finite Dt");
  const double dt = std::clamp(dt_raw, 0.0, 100.0);
  const double total = std::clamp(dq + du + dt, 0.0, 100.0);
  const double q = 100.0 - total;
  const double mos_tv = (du == 0.0 && dt == 0.0) ? mosq : mos_from_r(q);
  double mos = mos_tv;
  if (d.device_type == DeviceType::handheld) {
    mos = v[8] + v[9] * mos_tv + v[10] * mos_tv * mos_tv + v[11] * mos_tv * mos_tv * mos_tv;
  }
  o.terms = {mosq, dq, scale_factor, du, dt1, dt2, dt3, dt, total, q, mos_tv};
  o.native = q;
  o.mos = clamp_mos(mos);
  return kOk;
}

// ---- Yamagishi ------------------------------------------------------------

constexpr std::array<std::string_view, 5> kYamagishiTerms = {"f_o", "D_Fr", "v_0", "v_c", "QV"};

Status evaluate(const StreamFeatures& f, const DisplayParams&, const YamagishiCoefficients& k, Outcome<5>& o) noexcept {
  const auto& c = k.values;
  const double br = f.bitrate_kbps;
  const double fr = f.framerate_fps;
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");
  if (!(br > 0.0)) return precondition("bitrate_kbps must be positive");
  const double f_o = c[0] + c[1] * br;
  if (!(f_o > 0.0)) return domain("optimal frame rate f_o must be positive");
  const double d_fr = c[2] + c[3] * br;
  if (d_fr == 0.0) return domain("frame-rate robustness D_Fr is 0");
  if (c[5] == 0.0) return domain("c6 is 0");
  const double v0 = c[4] * (1.0 - 1.0 / (1.0 + std::pow(br / c[5], c[6])));
  const double log_ratio = std::log(fr) - std::log(f_o);
  const double vc = v0 * std::exp(-(log_ratio * log_ratio) / (2.0 * d_fr * d_fr));
  const double qv = 1.0 + vc;
  o.terms = {f_o, d_fr, v0, vc, qv};
  o.native = qv;
  o.mos = clamp_mos(qv);
  return kOk;
}

// ---- Ries -----------------------------------------------------------------

constexpr std::array<std::string_view, 2> kRiesTerms = {"content_class", "QV"};

Status evaluate(const StreamFeatures& f, const DisplayParams&, const RiesCoefficients& k, Outcome<2>& o) noexcept {
  const int cls = f.content_class.value_or(0);
  if (cls < 0 || cls >= kRiesClasses) return precondition("content_class must lie in 0..4");
  const double br = f.bitrate_kbps;
  const double fr = f.framerate_fps;
  if (br == 0.0) return domain("bitrate_kbps is 0");
  if (fr == 0.0) return domain("framerate_fps is 0");
  const double* c = k.values.data() + static_cast<std::size_t>(cls) * kRiesRowSize;
  const double qv = c[0] + c[1] * br + c[2] / br + c[3] * fr + c[4] / fr;
  o.terms = {static_cast<double>(cls), qv};
  o.native = qv;
  o.mos = clamp_mos(qv);
  return kOk;
}

// ---- Joskowicz ------------------------------------------------------------

constexpr std::array<std::string_view, 4> kJoskowiczTerms = {"v1", "v2", "v_c", "QV"};

Status evaluate(const StreamFeatures& f, const DisplayParams&, const JoskowiczCoefficients& k, Outcome<4>& o) noexcept {
  const auto& c = k.values;
  const double br = f.bitrate_kbps;
  const double sad = f.sad_per_pixel;
  if (!(br > 0.0)) return precondition("bitrate_kbps must be positive");
  if (!(sad >= 0.0)) return precondition("sad_per_pixel must be non-negative");
  const double v1 = c[0] * std::pow(sad, c[1]) + c[2];
  if (!(v1 > 0.0)) return domain("v1 must be positive");
  const double v2 = c[3] * std::pow(sad, c[4]) + c[5];
  const double vc = 4.0 * (1.0 - 1.0 / (1.0 + std::pow(br / v1, v2)));
  const double qv = 1.0 + vc;
  o.terms = {v1, v2, vc, qv};
  o.native = qv;
  o.mos = clamp_mos(qv);
  return kOk;
}

// ---- Takagi ---------------------------------------------------------------

constexpr std::array<std::string_view, 5> kTakagiTerms = {"v_c", "alpha", "beta", "gamma", "MOS_p"};
constexpr double kTakagiVcFloor = 1e-6;

Status evaluate(const StreamFeatures& f, const DisplayParams&, const TakagiCoefficients& k, Outcome<5>& o) noexcept {
  const auto& p = k.values;
  const double a1 = p[0], a2 = p[1], a3 = p[2], b1 = p[3], b2 = p[4], b3 = p[5];
  const double c1 = p[6], c2 = p[7], c3 = p[8], d1 = p[9], d2 = p[10], d3 = p[11], e = p[12];
  const double r = f.pixels_per_frame();
  const double fr = f.framerate_fps;
  const double br = f.bitrate_kbps;
  const double qp = f.avg_qp;
  if (!(r > 0.0)) return precondition("frame resolution must be positive");
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");
  if (!(br > 0.0)) return domain("bitrate_kbps must be positive");
  const double vc = std::max(qp - e * std::log(br), kTakagiVcFloor);
  const double log_r = std::log10(r);
  const double log_fr = std::log10(fr);
  const double alpha = a1 * log_r + b1 * log_fr + c1 * std::log10(vc) + d1;
  const double beta = a2 * log_r + b2 * log_fr + c2 * std::log(vc) + d2;
  const double gamma = a3 * log_r + b3 * log_fr + c3 * std::log10(vc) + d3;
  if (gamma == 0.0) return domain("gamma is 0");
  const double mos_p = -1.0 / (1.0 / gamma + std::exp(alpha * (qp - beta))) + gamma;
  o.terms = {vc, alpha, beta, gamma, mos_p};
  o.native = mos_p;
  o.mos = clamp_mos(mos_p);
  return kOk;
}

// ---- uVES Mode 1 ----------------------------------------------------------

struct CodingTerms {
  double kfr_imp, qp_fr, cpx, mv_imp, qcod;
};

Status coding_quality(const StreamFeatures& f, const double* n, CodingTerms& t) noexcept {
  const double br = f.bitrate_kbps;
  const double fr = f.framerate_fps;
  if (!(fr > 0.0)) return precondition("framerate_fps must be positive");
  if (!(br > 0.0)) return precondition("bitrate_kbps must be positive");
  if (!(f.avg_bytes_per_iframe > 0.0)) return domain("avg_bytes_per_iframe must be positive");
  t.kfr_imp = n[1] * f.key_frame_rate + n[2];
  t.qp_fr = n[3] + n[4] * std::pow(f.avg_qp / 51.0, n[5]) + n[6] / fr + n[7] * f.iflicker_count +
            n[8] * (f.max_qp - f.min_qp);
  t.cpx = std::min(std::sqrt(br / f.avg_bytes_per_iframe) + n[9] * f.skip_ratio, 1.0);
  t.mv_imp = n[10] * f.avg_mv * (1.0 - fr / 30.0);
  const double raw = t.kfr_imp * std::exp(n[0] * (t.qp_fr + t.cpx + t.mv_imp));
  if (std::isnan(raw)) return domain("non-finite Qcod");
  t.qcod = std::clamp(raw, 1.0, 5.0);
  return kOk;
}

constexpr std::array<std::string_view, 5> kUvesCodingTerms = {"kfr_imp", "QP_fr", "cpx_video", "MV_imp", "Qcod"};

Status evaluate(const StreamFeatures& f, const DisplayParams&, const UvesCodingCoefficients& k, Outcome<5>& o) noexcept {
  CodingTerms t{};
  if (const Status s = coding_quality(f, k.values.data(), t); !s.ok()) return s;
  o.terms = {t.kfr_imp, t.qp_fr, t.cpx, t.mv_imp, t.qcod};
  o.native = t.qcod;
  o.mos = t.qcod;
  return kOk;
}

constexpr std::array<std::string_view, 10> kUvesTerms = {"kfr_imp", "QP_fr",  "cpx_video", "MV_imp", "Qcod",
                                                         "ppi",     "Q_disp", "Q_Disp",    "Qd",     "Qs"};
constexpr double kUvesN1 = 4.0;
constexpr double kUvesN2 = 100.0;

Status evaluate(const StreamFeatures& f, const DisplayParams& d, const UvesCoefficients& k, Outcome<10>& o) noexcept {
  const auto& n = k.values;
  CodingTerms t{};
  if (const Status s = coding_quality(f, n.data(), t); !s.ok()) return s;
  const double screen = d.screen_size_inches;
  if (!(screen > 0.0)) return domain("screen_size_inches must be positive");
  if (n[12] == 0.0) return domain("n13 is 0");
  const double w = f.width_px;
  const double h = f.height_px;
  const double ppi = std::sqrt(w * w + h * h) / screen;
  const double q_disp = n[13] * (1.0 - 1.0 / (1.0 + std::pow(ppi / (n[14] * std::pow(screen, n[15])), n[16])));
  if (std::isnan(q_disp)) return domain("non-finite Q_disp");
  const double q_disp_clamped = std::clamp(q_disp, 1.0, 5.0);
  const double qd = q_disp_clamped - (q_disp_clamped - 1.0) / (1.0 + std::exp(n[11] * f.avg_qp / n[12]));
  const double qs = qd - (5.0 - t.qcod) * (qd - kUvesN1) / kUvesN2;
  o.terms = {t.kfr_imp, t.qp_fr, t.cpx, t.mv_imp, t.qcod, ppi, q_disp, q_disp_clamped, qd, qs};
  o.native = qs;
  o.mos = clamp_mos(qs);
  return kOk;
}

// ---- shared plumbing ------------------------------------------------------

template <typename K>
struct Traits;

#define NRVQA_MODEL_TRAITS(K, NAMES)                       \
  template <>                                              \
  struct Traits<K> {                                       \
    static constexpr const auto& names = NAMES;            \
    using Result = Outcome<std::tuple_size_v<std::remove_cvref_t<decltype(NAMES)>>>; \
  };

NRVQA_MODEL_TRAITS(G1070Coefficients, kG1070Terms)
NRVQA_MODEL_TRAITS(P1201_1Coefficients, kP1201_1Terms)
NRVQA_MODEL_TRAITS(P1201_2Coefficients, kP1201_2Terms)
NRVQA_MODEL_TRAITS(P1203Coefficients, kP1203Terms)
NRVQA_MODEL_TRAITS(YamagishiCoefficients, kYamagishiTerms)
NRVQA_MODEL_TRAITS(RiesCoefficients, kRiesTerms)
NRVQA_MODEL_TRAITS(JoskowiczCoefficients, kJoskowiczTerms)
NRVQA_MODEL_TRAITS(TakagiCoefficients, kTakagiTerms)
NRVQA_MODEL_TRAITS(UvesCoefficients, kUvesTerms)
NRVQA_MODEL_TRAITS(UvesCodingCoefficients, kUvesCodingTerms)

#undef NRVQA_MODEL_TRAITS

template <std::size_t N>
bool all_finite(const Outcome<N>& o) {
  if (!std::isfinite(o.mos) || !std::isfinite(o.native)) return false;
  return std::all_of(o.terms.begin(), o.terms.end(), [](double v) { return std::isfinite(v); });
}

bool finite_inputs(const StreamFeatures& f, const DisplayParams& d) noexcept {
  for (double v : {f.bitrate_kbps, f.framerate_fps, f.avg_bytes_per_iframe, f.avg_qp, f.max_qp, f.min_qp,
                   f.skip_ratio, f.avg_mv, f.key_frame_rate, f.gop_distance, f.sad_per_pixel, f.quant,
                   d.screen_size_inches}) {
    if (!std::isfinite(v)) return false;
  }
  return std::all_of(f.scenes.begin(), f.scenes.end(), [](const SceneStats& s) {
    return std::isfinite(s.avg_iframe_bytes) && std::isfinite(s.weight);
  });
}

void require_finite_inputs(const StreamFeatures& f, const DisplayParams& d) {
  if (!finite_inputs(f, d)) throw InvalidArgument("non-finite model input");
}

template <typename K>
void add_warnings(const StreamFeatures&, const DisplayParams&, const K&, std::vector<std::string>&) {}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const P1201_1Coefficients&,
                  std::vector<std::string>& w) {
  if (f.imputed.avg_bytes_per_iframe) w.emplace_back("avg_bytes_per_iframe imputed; cpx_video set to 0.5");
}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const P1201_2Coefficients&,
                  std::vector<std::string>& w) {
  if (f.imputed.scenes) w.emplace_back("scene statistics imputed as a single scene");
}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const P1203Coefficients&,
                  std::vector<std::string>& w) {
  if (f.imputed.quant) w.emplace_back("quant imputed from mean QP");
}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const RiesCoefficients&,
                  std::vector<std::string>& w) {
  if (!f.content_class) w.emplace_back("content_class absent; using class 0");
}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const JoskowiczCoefficients&,
                  std::vector<std::string>& w) {
  if (f.imputed.sad) w.emplace_back("sad_per_pixel imputed as 0");
}

void add_uves_warnings(const StreamFeatures& f, std::vector<std::string>& w) {
  if (f.imputed.skip_ratio) w.emplace_back("skip_ratio imputed as 0");
  if (f.imputed.avg_mv) w.emplace_back("avg_mv imputed as 0");
  if (f.imputed.key_frame_rate) w.emplace_back("key_frame_rate imputed");
}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const UvesCoefficients&,
                  std::vector<std::string>& w) {
  add_uves_warnings(f, w);
}

void add_warnings(const StreamFeatures& f, const DisplayParams&, const UvesCodingCoefficients&,
                  std::vector<std::string>& w) {
  add_uves_warnings(f, w);
}

template <typename K>
Prediction run(const StreamFeatures& f, const DisplayParams& d, const K& k) {
  require_finite_inputs(f, d);
  for (double v : k.values) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite coefficient");
  }
  typename Traits<K>::Result o;
  const Status s = evaluate(f, d, k, o);
  const std::string prefix = std::string(model_name(K::model)) + ": ";
  if (!s.ok()) {
    if (s.precondition) throw InvalidArgument(prefix + s.message);
    throw DomainError(prefix + s.message);
  }
  const auto& names = Traits<K>::names;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!std::isfinite(o.terms[i])) throw DomainError(prefix + "non-finite " + std::string(names[i]));
  }
  if (!all_finite(o)) throw DomainError(prefix + "non-finite prediction");

  Prediction p;
  p.model = K::model;
  p.mos = o.mos;
  p.native_scale_value = o.native;
  p.breakdown.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) p.breakdown.push_back({std::string(names[i]), o.terms[i]});
  add_warnings(f, d, k, p.warnings);
  return p;
}

const DisplayParams kNoDisplay{};

}  // namespace

double Prediction::term(std::string_view name) const {
  for (const auto& t : breakdown) {
    if (t.name == name) return t.value;
  }
  throw InvalidArgument("prediction has no term '" + std::string(name) + "'");
}

Prediction predict_g1070(const StreamFeatures& f, const G1070Coefficients& k) { return run(f, kNoDisplay, k); }
Prediction predict_p1201_1(const StreamFeatures& f, const P1201_1Coefficients& k) { return run(f, kNoDisplay, k); }
Prediction predict_p1201_2(const StreamFeatures& f, const P1201_2Coefficients& k) { return run(f, kNoDisplay, k); }
Prediction predict_p1203_mode3(const StreamFeatures& f, const DisplayParams& d, const P1203Coefficients& k) {
  return run(f, d, k);
}
Prediction predict_yamagishi(const StreamFeatures& f, const YamagishiCoefficients& k) {
  return run(f, kNoDisplay, k);
}
Prediction predict_ries(const StreamFeatures& f, const RiesCoefficients& k) { return run(f, kNoDisplay, k); }
Prediction predict_joskowicz(const StreamFeatures& f, const JoskowiczCoefficients& k) {
  return run(f, kNoDisplay, k);
}
Prediction predict_takagi(const StreamFeatures& f, const TakagiCoefficients& k) { return run(f, kNoDisplay, k); }
Prediction predict_uves_mode1(const StreamFeatures& f, const DisplayParams& d, const UvesCoefficients& k) {
  return run(f, d, k);
}
Prediction predict_uves_model1_1(const StreamFeatures& f, const UvesCodingCoefficients& k) {
  return run(f, kNoDisplay, k);
}

Prediction predict(const CoefficientSet& k, const StreamFeatures& f, const DisplayParams& d) {
  return std::visit([&](const auto& coefficients) { return run(f, d, coefficients); }, k);
}

std::optional<double> try_predict_mos(const CoefficientSet& k, const StreamFeatures& f,
                                      const DisplayParams& d) noexcept {
  return std::visit(
      [&](const auto& coefficients) -> std::optional<double> {
        using K = std::remove_cvref_t<decltype(coefficients)>;
        typename Traits<K>::Result o;
        if (!finite_inputs(f, d) || !evaluate(f, d, coefficients, o).ok() || !all_finite(o)) return std::nullopt;
        return o.mos;
      },
      k);
}

}  // namespace nrvqa
