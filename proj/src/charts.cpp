#include "plp/charts.hpp"

namespace plp {

ChartLayout makeChartLayout(const Problem& prob, bool dropUnobservedCameras) {
  ChartLayout layout;
  layout.features = localFeatures(prob);
  for (const auto& f : layout.features)
    layout.arrangementDim += f.pattern.freeLine ? 4 : 3 + 2 * static_cast<int>(f.pattern.pinVisible.size());

  layout.cameraActive = {true, true, true};
  if (dropUnobservedCameras)
    for (int v = 0; v < 3; ++v)
      layout.cameraActive[static_cast<size_t>(v)] =
          !prob.views[static_cast<size_t>(v)].points.empty() ||
          !prob.views[static_cast<size_t>(v)].lines.empty();
  layout.cameraDim =
      (layout.cameraActive[1] ? 5 : 0) + (layout.cameraActive[2] ? 6 : 0);

  for (const auto& f : layout.features) {
    const auto& pat = f.pattern;
    for (int v = 0; v < 3; ++v) {
      if (pat.freeLine) {
        if (pat.pinVisible[0][static_cast<size_t>(v)]) layout.imageDim += 2;
        continue;
      }
      const bool seesPoint = pat.pointVisible[static_cast<size_t>(v)];
      if (seesPoint) layout.imageDim += 2;
      for (const auto& pin : pat.pinVisible)
        if (pin[static_cast<size_t>(v)]) layout.imageDim += seesPoint ? 1 : 2;
    }
  }
  return layout;
}

ChartInstance<FieldElement> sampleFieldInstance(const ChartLayout& layout, std::uint64_t q,
                                                std::uint64_t seed, int maxAttempts) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  auto draw = [&] { return FieldElement(static_cast<std::int64_t>(dist(rng)), q); };
  return sampleInstanceWith<FieldElement>(layout, draw, maxAttempts);
}

ChartInstance<std::complex<double>> sampleComplexInstance(const ChartLayout& layout,
                                                          std::uint64_t seed, int maxAttempts) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto draw = [&] { return std::complex<double>(dist(rng), dist(rng)); };
  return sampleInstanceWith<std::complex<double>>(layout, draw, maxAttempts);
}

}  // namespace plp
