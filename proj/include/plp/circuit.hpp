#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plp/dual.hpp"
#include "plp/ffield.hpp"

namespace plp {

/// Straight-line arithmetic program over +,−,×,÷ with integer constants and
/// named inputs.
struct Circuit {
  enum class Op : std::uint8_t { Input, Const, Add, Sub, Mul, Div, Neg };
  struct Node {
    Op op = Op::Const;
    int a = -1;              // operand node (or input index for Input)
    int b = -1;              // second operand node
    std::int64_t value = 0;  // for Const
  };
  std::vector<Node> nodes;
  int output = -1;
  int inputCount = 0;

  int addInput(int index);
  int addConst(std::int64_t v);
  int add(Op op, int a, int b = -1);
};

FieldElement evalCircuit(const Circuit& c, std::span<const FieldElement> point);

/// Value and exact partial derivative of the circuit with respect to the
/// input of the given index, by dual-number evaluation. Throws
/// DegenerateEvaluation if a division by zero occurs at the point.
Dual<FieldElement> dualEval(const Circuit& c, std::span<const FieldElement> point, int direction);

}  // namespace plp
