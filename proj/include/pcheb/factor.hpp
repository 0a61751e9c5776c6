#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "pcheb/padic.hpp"

namespace pcheb {

// multiset {f^e}; parts kept sorted by f ascending, then e descending
struct FactorizationType {
    std::vector<std::pair<int, int>> parts;  // (residue degree f, ramification e)

    static FactorizationType from_parts(std::vector<std::pair<int, int>> parts);
    static FactorizationType parse(const std::string& text);

    int degree() const;
    bool unramified() const;
    std::string str() const;
    FactorizationType scaled(int d) const;  // every f multiplied by d
    FactorizationType merged(const FactorizationType& other) const;

    auto operator<=>(const FactorizationType&) const = default;
};

// all types of degree n in canonical order
std::vector<FactorizationType> all_types(int n);

class NotSquarefree : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

FactorizationType classify(const BaseRing& R, const PadicPoly& h);

// (residue degree, ramification) of the components of O_L/pO_L for the
// maximal order of K[y]/(h), h monic integral; exposed for tests
std::vector<std::pair<int, int>> maximal_order_type(const BaseRing& R, const std::vector<OElem>& monic_h);

enum class CellModel { haar, monic };

struct Cell {
    int n = 0;
    CellModel model = CellModel::haar;
    std::vector<OElem> residues;  // n+1 (haar) or n (monic, leading 1 implied)
    int depth = 1;
};

struct Decision {
    bool decided = false;
    FactorizationType type;
    int needs_depth = 0;

    static Decision yes(FactorizationType t) { return {true, std::move(t), 0}; }
    static Decision no(int k) { return {false, {}, k}; }
};

Decision cell_decided(const BaseRing& R, const Cell& c);

// h carries its own precision per coefficient; open_constant accepts an
// undetermined constant term when it can only move one simple root
Decision decide_box(const BaseRing& R, const PadicPoly& h, bool open_constant = false);

// independent classifier for p > n via root counting in tame extensions
FactorizationType tame_oracle_classify(const BaseRing& R, const PadicPoly& h);

}  // namespace pcheb
