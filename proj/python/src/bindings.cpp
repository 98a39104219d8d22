// Copyright 2026 The sppkit Authors
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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

#include "sppkit/datagen.hpp"
#include "sppkit/enhance.hpp"
#include "sppkit/errors.hpp"
#include "sppkit/metrics.hpp"
#include "sppkit/nn/bundle_io.hpp"
#include "sppkit/nn/golden.hpp"
#include "sppkit/stft.hpp"

namespace py = pybind11;
using namespace sppkit;

namespace {

using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using C128Array = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

AudioBuffer to_audio(const F64Array& a) {
  if (a.ndim() != 1) throw ShapeMismatch("audio must be one-dimensional");
  AudioBuffer out;
  out.samples.assign(a.data(), a.data() + a.size());
  return out;
}

py::array_t<double> from_audio(const AudioBuffer& a) {
  return py::array_t<double>(static_cast<py::ssize_t>(a.size()), a.samples.data());
}

template <typename T>
py::array_t<T> from_grid(const Grid<T>& g) {
  return py::array_t<T>({static_cast<py::ssize_t>(g.bins()), static_cast<py::ssize_t>(g.frames())},
                        g.values().data());
}

template <typename T, typename A>
Grid<T> to_grid(const A& a) {
  if (a.ndim() != 2) throw ShapeMismatch("expected a two-dimensional (bins, frames) array");
  Grid<T> g(a.shape(0), a.shape(1));
  std::copy(a.data(), a.data() + a.size(), g.values().begin());
  return g;
}

std::vector<double> to_vector(const F64Array& a) { return {a.data(), a.data() + a.size()}; }

py::dict enhance_py(const F64Array& noisy, const std::string& spp, const std::string& tracker,
                    const std::string& dd, double alpha_snr, double gain_floor,
                    std::shared_ptr<const nn::ModelBundle> model) {
  EnhanceConfig config;
  config.spp_source = parse_spp_source(spp);
  config.tracker = parse_tracker(tracker);
  if (dd == "printed") {
    config.dd_mode = DdMode::kAsPrinted;
  } else if (dd == "classical") {
    config.dd_mode = DdMode::kClassical;
  } else {
    throw InvalidConfig("dd must be 'printed' or 'classical'");
  }
  config.alpha_snr = alpha_snr;
  config.gain_floor = gain_floor;
  const AudioBuffer input = to_audio(noisy);
  EnhanceResult r;
  {
    py::gil_scoped_release release;
    r = enhance(input, config, std::move(model));
  }
  py::dict out;
  out["audio"] = from_audio(r.audio);
  out["spp"] = from_grid(r.spp.values());
  out["noise_psd"] = from_grid(r.noise_psd);
  out["gain"] = from_grid(r.gain);
  return out;
}

}  // namespace

PYBIND11_MODULE(_sppkit, m) {
  m.doc() = "Speech-presence-probability toolkit";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ShapeMismatch>(m, "ShapeMismatch", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  m.attr("SAMPLE_RATE") = kSampleRate;

  m.def("stft", [](const F64Array& audio) { return from_grid(stft(to_audio(audio)).data); },
        py::arg("audio"), "Complex (bins, frames) STFT with the default frame layout.");
  m.def("istft", [](const C128Array& spec) {
        return from_audio(istft(Spectrogram{to_grid<std::complex<double>>(spec), StftConfig{}}));
      },
      py::arg("spec"));

  m.def("posterior_spp",
        py::vectorize([](double y_pow, double phi_n, double xi_h1_db, double alpha) {
          FixedPriorParams p;
          p.xi_h1_db = xi_h1_db;
          p.alpha_prior = alpha;
          return posterior_spp_fixed_prior(y_pow, phi_n, p);
        }),
        py::arg("y_pow"), py::arg("phi_n"), py::arg("xi_h1_db") = 15.0, py::arg("alpha") = 1.0);
  m.def("target_spp",
        py::vectorize([](double y_pow, double phi_x, double phi_n) {
          return oracle_target_spp(y_pow, phi_x, phi_n);
        }),
        py::arg("y_pow"), py::arg("phi_x"), py::arg("phi_n"));
  m.def("lsa_gain",
        py::vectorize([](double xi, double gamma) { return lsa_gain(xi, gamma); }),
        py::arg("xi"), py::arg("gamma"));

  py::class_<nn::ModelBundle, std::shared_ptr<nn::ModelBundle>>(m, "Model")
      .def_property_readonly("variant",
                             [](const nn::ModelBundle& b) {
                               return std::string(nn::variant_name(b.descriptor.variant));
                             })
      .def_property_readonly("param_count",
                             [](const nn::ModelBundle& b) { return nn::param_count(b.descriptor); })
      .def_property_readonly("norm_stats",
                             [](const nn::ModelBundle& b) {
                               return py::make_tuple(b.norm_stats.mean, b.norm_stats.std);
                             })
      .def(
          "forward",
          [](const nn::ModelBundle& b, const F64Array& log_power) {
            const LogPowerFeatures raw{to_grid<double>(log_power), std::nullopt};
            return from_grid(nn::model_forward(b, normalize(raw, b.norm_stats)).values());
          },
          py::arg("log_power"), "SPP map from raw (bins, frames) log-power features.")
      .def("save", [](const nn::ModelBundle& b, const std::filesystem::path& p) {
        nn::save_model(b, p);
      });

  m.def("load_model", [](const std::filesystem::path& path) {
        return std::make_shared<nn::ModelBundle>(nn::load_model(path));
      },
      py::arg("path"));
  m.def("random_model", [](const std::string& variant, std::uint64_t seed) {
        const auto v = nn::parse_variant(variant);
        return std::make_shared<nn::ModelBundle>(nn::random_bundle(
            v == nn::ModelVariant::kBlstm ? nn::ModelDescriptor::blstm()
                                          : nn::ModelDescriptor::attention(),
            seed));
      },
      py::arg("variant"), py::arg("seed") = 0);

  m.def("enhance", &enhance_py, py::arg("noisy"), py::arg("spp") = "stat",
        py::arg("tracker") = "subopt", py::arg("dd") = "printed", py::arg("alpha_snr") = 0.90,
        py::arg("gain_floor") = 0.0, py::arg("model") = nullptr);

  m.def("make_utterance",
        [](double snr_db, std::uint64_t seed, double duration_s, const std::string& noise) {
          const SyntheticUtterance u =
              make_utterance({snr_db, seed, duration_s, parse_noise_kind(noise)});
          py::dict out;
          out["clean"] = from_audio(u.clean);
          out["noise"] = from_audio(u.noise);
          out["noisy"] = from_audio(u.noisy);
          return out;
        },
        py::arg("snr_db"), py::arg("seed"), py::arg("duration_s") = 2.0,
        py::arg("noise") = "white");
  m.def("read_pair_file", [](const std::filesystem::path& path) {
        const PairRecord r = read_pair_file(path);
        py::dict out;
        out["features"] = from_grid(r.features.values);
        out["target"] = from_grid(r.target.values());
        out["seed"] = r.seed;
        out["snr_db"] = r.snr_db;
        out["norm_stats"] = py::make_tuple(r.features.normalization->mean,
                                           r.features.normalization->std);
        return out;
      },
      py::arg("path"));

  m.def("log_err", [](const F64Array& ref, const F64Array& est) {
        return log_err(to_grid<double>(ref), to_grid<double>(est));
      },
      py::arg("ref"), py::arg("est"));
  m.def("auc", [](const F64Array& scores, const F64Array& truth, double threshold) {
        return auc(roc(to_vector(scores), to_vector(truth), threshold));
      },
      py::arg("scores"), py::arg("truth"), py::arg("threshold") = kDefaultLabelThreshold);
  m.def("kl_divergence",
        [](const F64Array& target, const F64Array& estimate, double eps, bool full_binary) {
          return kl_divergence(to_vector(target), to_vector(estimate), eps,
                               full_binary ? KlForm::kBinary : KlForm::kAsPrinted);
        },
        py::arg("target"), py::arg("estimate"), py::arg("eps") = kDefaultKlEps,
        py::arg("full_binary") = false);
  m.def("segmental_snr", [](const F64Array& ref, const F64Array& est) {
        return segmental_snr(to_audio(ref), to_audio(est));
      },
      py::arg("ref"), py::arg("est"));
}
