#include "steer/tolerances.hpp"

#include <array>

namespace steer {
namespace {

struct Field {
  std::string_view key;
  double Tolerances::*member;
};

constexpr std::array<Field, 12> kFields{{
    {"hermiticity", &Tolerances::hermiticity},
    {"normalization", &Tolerances::normalization},
    {"kernel", &Tolerances::kernel},
    {"rank", &Tolerances::rank},
    {"purity", &Tolerances::purity},
    {"prob_floor", &Tolerances::prob_floor},
    {"offdiag", &Tolerances::offdiag},
    {"offdiag_floor", &Tolerances::offdiag_floor},
    {"overlap", &Tolerances::overlap},
    {"orthogonality", &Tolerances::orthogonality},
    {"witness", &Tolerances::witness},
    {"vector_identity", &Tolerances::vector_identity},
}};

}  // namespace

bool Tolerances::set(std::string_view key, double value) {
  for (const auto& f : kFields) {
    if (f.member != nullptr && f.key == key) {
      this->*f.member = value;
      return true;
    }
  }
  return false;
}

std::optional<double> Tolerances::get(std::string_view key) const {
  for (const auto& f : kFields) {
    if (f.member != nullptr && f.key == key) return this->*f.member;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& f : kFields) {
    if (f.member != nullptr) out.emplace_back(std::string(f.key), this->*f.member);
  }
  return out;
}

}  // namespace steer
