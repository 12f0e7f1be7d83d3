#include "derham/complex.hpp"

#include <algorithm>

namespace derham {

DModPresentation DModPresentation::free(int n, int rank, ShiftVector shift) {
  DModPresentation p;
  p.n = n;
  p.rank = rank;
  p.shift = std::move(shift);
  return p;
}

DModPresentation DModPresentation::cyclic(int n, std::vector<WeylElement> relations) {
  DModPresentation p;
  p.n = n;
  p.rank = 1;
  for (auto& r : relations) p.relations.push_back(ModuleElement(std::vector<WeylElement>{r}));
  return p;
}

int DModPresentation::block_offset(int b) const {
  int off = 0;
  for (int i = 0; i < b; ++i) off += blocks.at(i);
  return off;
}

DModPresentation DModPresentation::block(int b) const {
  if (blocks.empty()) {
    if (b != 0) throw DimensionMismatch("block index out of range");
    return *this;
  }
  int off = block_offset(b), len = blocks.at(b);
  DModPresentation p;
  p.n = n;
  p.rank = len;
  if (!shift.empty()) p.shift.assign(shift.begin() + off, shift.begin() + off + len);
  if (!generator_labels.empty())
    p.generator_labels.assign(generator_labels.begin() + off, generator_labels.begin() + off + len);
  for (const auto& r : relations) {
    ModuleElement s = r.slice(off, off + len);
    if (s.is_zero()) continue;
    p.relations.push_back(s);
  }
  return p;
}

DModPresentation direct_sum(const std::vector<DModPresentation>& parts, int n) {
  DModPresentation out;
  out.n = n;
  bool shifted = false, labelled = false;
  for (const auto& p : parts) {
    shifted |= !p.shift.empty();
    labelled |= !p.generator_labels.empty();
  }
  for (const auto& p : parts) out.rank += p.rank;
  int off = 0;
  for (const auto& p : parts) {
    out.blocks.push_back(p.rank);
    if (shifted) {
      auto s = p.shift_or_zero();
      out.shift.insert(out.shift.end(), s.begin(), s.end());
    }
    if (labelled) {
      for (int i = 0; i < p.rank; ++i)
        out.generator_labels.push_back(p.generator_labels.empty() ? "" : p.generator_labels[i]);
    }
    for (const auto& r : p.relations) {
      std::vector<WeylElement> comps(out.rank, WeylElement(n));
      for (int i = 0; i < p.rank; ++i) comps[off + i] = r[i];
      out.relations.push_back(ModuleElement(std::move(comps)));
    }
    off += p.rank;
  }
  return out;
}

bool ChainComplexPres::is_free() const {
  return std::all_of(modules.begin(), modules.end(),
                     [](const DModPresentation& m) { return m.is_free(); });
}

}  // namespace derham
