#include "plp/circuit.hpp"

#include <stdexcept>

namespace plp {

int Circuit::addInput(int index) {
  if (index >= inputCount) inputCount = index + 1;
  nodes.push_back({Op::Input, index, -1, 0});
  return static_cast<int>(nodes.size()) - 1;
}

int Circuit::addConst(std::int64_t v) {
  nodes.push_back({Op::Const, -1, -1, v});
  return static_cast<int>(nodes.size()) - 1;
}

int Circuit::add(Op op, int a, int b) {
  nodes.push_back({op, a, b, 0});
  return static_cast<int>(nodes.size()) - 1;
}

namespace {

template <class T>
T evalImpl(const Circuit& c, std::span<const T> point, const T& model) {
  if (c.output < 0 || c.output >= static_cast<int>(c.nodes.size()))
    throw std::invalid_argument("circuit has no output");
  std::vector<T> vals(c.nodes.size(), zeroLike(model));
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.op) {
      case Circuit::Op::Input:
        vals[i] = point[static_cast<size_t>(n.a)];
        break;
      case Circuit::Op::Const: {
        // build n.value · 1 without a direct integer constructor
        T v = zeroLike(model);
        T one = oneLike(model);
        std::int64_t k = n.value < 0 ? -n.value : n.value;
        for (std::int64_t j = 0; j < k; ++j) v += one;
        vals[i] = n.value < 0 ? -v : v;
        break;
      }
      case Circuit::Op::Add:
        vals[i] = vals[static_cast<size_t>(n.a)] + vals[static_cast<size_t>(n.b)];
        break;
      case Circuit::Op::Sub:
        vals[i] = vals[static_cast<size_t>(n.a)] - vals[static_cast<size_t>(n.b)];
        break;
      case Circuit::Op::Mul:
        vals[i] = vals[static_cast<size_t>(n.a)] * vals[static_cast<size_t>(n.b)];
        break;
      case Circuit::Op::Div:
        vals[i] = vals[static_cast<size_t>(n.a)] / vals[static_cast<size_t>(n.b)];
        break;
      case Circuit::Op::Neg:
        vals[i] = -vals[static_cast<size_t>(n.a)];
        break;
    }
  }
  return vals[static_cast<size_t>(c.output)];
}

}  // namespace

FieldElement evalCircuit(const Circuit& c, std::span<const FieldElement> point) {
  if (point.empty()) throw std::invalid_argument("empty evaluation point");
  return evalImpl<FieldElement>(c, point, point[0]);
}

Dual<FieldElement> dualEval(const Circuit& c, std::span<const FieldElement> point, int direction) {
  if (point.empty()) throw std::invalid_argument("empty evaluation point");
  std::vector<Dual<FieldElement>> dualPoint;
  dualPoint.reserve(point.size());
  for (size_t i = 0; i < point.size(); ++i) {
    Dual<FieldElement> d(point[i]);
    if (static_cast<int>(i) == direction) d.deriv = oneLike(point[i]);
    dualPoint.push_back(d);
  }
  return evalImpl<Dual<FieldElement>>(c, dualPoint, dualPoint[0]);
}

}  // namespace plp
