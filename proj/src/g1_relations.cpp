#include "fabercone/divisor.hpp"

#include <map>
#include <mutex>

#include "fabercone/intersection.hpp"
#include "fabercone/json_io.hpp"
#include "fabercone/linalg.hpp"

namespace fabercone {

namespace {

// Boundary expansions of lambda and of the psi classes on genus-1 spaces,
// shipped as data and never trusted blindly: load-time validation checks
// that every row vanishes against every stratum functional and that the
// rows are independent.  The 1-pointed table carries the lambda row only;
// see g1_relation_table().
const char* kGenus1RelationData = R"relations(
{
 "1": [
  {
   "g": 1,
   "n": 1,
   "lambda": "1",
   "delta_irr": "-1/12",
   "psi": {},
   "boundary": {}
  }
 ],
 "2": [
  {
   "g": 1,
   "n": 2,
   "lambda": "1",
   "delta_irr": "-1/12",
   "psi": {},
   "boundary": {}
  },
  {
   "g": 1,
   "n": 2,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "1": "1"
   },
   "boundary": {
    "0|1,2": "-1"
   }
  },
  {
   "g": 1,
   "n": 2,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "2": "1"
   },
   "boundary": {
    "0|1,2": "-1"
   }
  }
 ],
 "3": [
  {
   "g": 1,
   "n": 3,
   "lambda": "1",
   "delta_irr": "-1/12",
   "psi": {},
   "boundary": {}
  },
  {
   "g": 1,
   "n": 3,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "1": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|1,3": "-1",
    "0|1,2,3": "-1"
   }
  },
  {
   "g": 1,
   "n": 3,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "2": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|2,3": "-1",
    "0|1,2,3": "-1"
   }
  },
  {
   "g": 1,
   "n": 3,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "3": "1"
   },
   "boundary": {
    "0|1,3": "-1",
    "0|2,3": "-1",
    "0|1,2,3": "-1"
   }
  }
 ],
 "4": [
  {
   "g": 1,
   "n": 4,
   "lambda": "1",
   "delta_irr": "-1/12",
   "psi": {},
   "boundary": {}
  },
  {
   "g": 1,
   "n": 4,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "1": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|1,3": "-1",
    "0|1,4": "-1",
    "0|1,2,3": "-1",
    "0|1,2,4": "-1",
    "0|1,3,4": "-1",
    "0|1,2,3,4": "-1"
   }
  },
  {
   "g": 1,
   "n": 4,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "2": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|2,3": "-1",
    "0|2,4": "-1",
    "0|1,2,3": "-1",
    "0|1,2,4": "-1",
    "0|2,3,4": "-1",
    "0|1,2,3,4": "-1"
   }
  },
  {
   "g": 1,
   "n": 4,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "3": "1"
   },
   "boundary": {
    "0|1,3": "-1",
    "0|2,3": "-1",
    "0|3,4": "-1",
    "0|1,2,3": "-1",
    "0|1,3,4": "-1",
    "0|2,3,4": "-1",
    "0|1,2,3,4": "-1"
   }
  },
  {
   "g": 1,
   "n": 4,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "4": "1"
   },
   "boundary": {
    "0|1,4": "-1",
    "0|2,4": "-1",
    "0|3,4": "-1",
    "0|1,2,4": "-1",
    "0|1,3,4": "-1",
    "0|2,3,4": "-1",
    "0|1,2,3,4": "-1"
   }
  }
 ],
 "5": [
  {
   "g": 1,
   "n": 5,
   "lambda": "1",
   "delta_irr": "-1/12",
   "psi": {},
   "boundary": {}
  },
  {
   "g": 1,
   "n": 5,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "1": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|1,3": "-1",
    "0|1,4": "-1",
    "0|1,5": "-1",
    "0|1,2,3": "-1",
    "0|1,2,4": "-1",
    "0|1,2,5": "-1",
    "0|1,3,4": "-1",
    "0|1,3,5": "-1",
    "0|1,4,5": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,4,5": "-1",
    "0|1,3,4,5": "-1",
    "0|1,2,3,4,5": "-1"
   }
  },
  {
   "g": 1,
   "n": 5,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "2": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|2,3": "-1",
    "0|2,4": "-1",
    "0|2,5": "-1",
    "0|1,2,3": "-1",
    "0|1,2,4": "-1",
    "0|1,2,5": "-1",
    "0|2,3,4": "-1",
    "0|2,3,5": "-1",
    "0|2,4,5": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,4,5": "-1",
    "0|2,3,4,5": "-1",
    "0|1,2,3,4,5": "-1"
   }
  },
  {
   "g": 1,
   "n": 5,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "3": "1"
   },
   "boundary": {
    "0|1,3": "-1",
    "0|2,3": "-1",
    "0|3,4": "-1",
    "0|3,5": "-1",
    "0|1,2,3": "-1",
    "0|1,3,4": "-1",
    "0|1,3,5": "-1",
    "0|2,3,4": "-1",
    "0|2,3,5": "-1",
    "0|3,4,5": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,3,5": "-1",
    "0|1,3,4,5": "-1",
    "0|2,3,4,5": "-1",
    "0|1,2,3,4,5": "-1"
   }
  },
  {
   "g": 1,
   "n": 5,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "4": "1"
   },
   "boundary": {
    "0|1,4": "-1",
    "0|2,4": "-1",
    "0|3,4": "-1",
    "0|4,5": "-1",
    "0|1,2,4": "-1",
    "0|1,3,4": "-1",
    "0|1,4,5": "-1",
    "0|2,3,4": "-1",
    "0|2,4,5": "-1",
    "0|3,4,5": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,4,5": "-1",
    "0|1,3,4,5": "-1",
    "0|2,3,4,5": "-1",
    "0|1,2,3,4,5": "-1"
   }
  },
  {
   "g": 1,
   "n": 5,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "5": "1"
   },
   "boundary": {
    "0|1,5": "-1",
    "0|2,5": "-1",
    "0|3,5": "-1",
    "0|4,5": "-1",
    "0|1,2,5": "-1",
    "0|1,3,5": "-1",
    "0|1,4,5": "-1",
    "0|2,3,5": "-1",
    "0|2,4,5": "-1",
    "0|3,4,5": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,4,5": "-1",
    "0|1,3,4,5": "-1",
    "0|2,3,4,5": "-1",
    "0|1,2,3,4,5": "-1"
   }
  }
 ],
 "6": [
  {
   "g": 1,
   "n": 6,
   "lambda": "1",
   "delta_irr": "-1/12",
   "psi": {},
   "boundary": {}
  },
  {
   "g": 1,
   "n": 6,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "1": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|1,3": "-1",
    "0|1,4": "-1",
    "0|1,5": "-1",
    "0|1,6": "-1",
    "0|1,2,3": "-1",
    "0|1,2,4": "-1",
    "0|1,2,5": "-1",
    "0|1,2,6": "-1",
    "0|1,3,4": "-1",
    "0|1,3,5": "-1",
    "0|1,3,6": "-1",
    "0|1,4,5": "-1",
    "0|1,4,6": "-1",
    "0|1,5,6": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,3,6": "-1",
    "0|1,2,4,5": "-1",
    "0|1,2,4,6": "-1",
    "0|1,2,5,6": "-1",
    "0|1,3,4,5": "-1",
    "0|1,3,4,6": "-1",
    "0|1,3,5,6": "-1",
    "0|1,4,5,6": "-1",
    "0|1,2,3,4,5": "-1",
    "0|1,2,3,4,6": "-1",
    "0|1,2,3,5,6": "-1",
    "0|1,2,4,5,6": "-1",
    "0|1,3,4,5,6": "-1",
    "0|1,2,3,4,5,6": "-1"
   }
  },
  {
   "g": 1,
   "n": 6,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "2": "1"
   },
   "boundary": {
    "0|1,2": "-1",
    "0|2,3": "-1",
    "0|2,4": "-1",
    "0|2,5": "-1",
    "0|2,6": "-1",
    "0|1,2,3": "-1",
    "0|1,2,4": "-1",
    "0|1,2,5": "-1",
    "0|1,2,6": "-1",
    "0|2,3,4": "-1",
    "0|2,3,5": "-1",
    "0|2,3,6": "-1",
    "0|2,4,5": "-1",
    "0|2,4,6": "-1",
    "0|2,5,6": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,3,6": "-1",
    "0|1,2,4,5": "-1",
    "0|1,2,4,6": "-1",
    "0|1,2,5,6": "-1",
    "0|2,3,4,5": "-1",
    "0|2,3,4,6": "-1",
    "0|2,3,5,6": "-1",
    "0|2,4,5,6": "-1",
    "0|1,2,3,4,5": "-1",
    "0|1,2,3,4,6": "-1",
    "0|1,2,3,5,6": "-1",
    "0|1,2,4,5,6": "-1",
    "0|2,3,4,5,6": "-1",
    "0|1,2,3,4,5,6": "-1"
   }
  },
  {
   "g": 1,
   "n": 6,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "3": "1"
   },
   "boundary": {
    "0|1,3": "-1",
    "0|2,3": "-1",
    "0|3,4": "-1",
    "0|3,5": "-1",
    "0|3,6": "-1",
    "0|1,2,3": "-1",
    "0|1,3,4": "-1",
    "0|1,3,5": "-1",
    "0|1,3,6": "-1",
    "0|2,3,4": "-1",
    "0|2,3,5": "-1",
    "0|2,3,6": "-1",
    "0|3,4,5": "-1",
    "0|3,4,6": "-1",
    "0|3,5,6": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,3,6": "-1",
    "0|1,3,4,5": "-1",
    "0|1,3,4,6": "-1",
    "0|1,3,5,6": "-1",
    "0|2,3,4,5": "-1",
    "0|2,3,4,6": "-1",
    "0|2,3,5,6": "-1",
    "0|3,4,5,6": "-1",
    "0|1,2,3,4,5": "-1",
    "0|1,2,3,4,6": "-1",
    "0|1,2,3,5,6": "-1",
    "0|1,3,4,5,6": "-1",
    "0|2,3,4,5,6": "-1",
    "0|1,2,3,4,5,6": "-1"
   }
  },
  {
   "g": 1,
   "n": 6,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "4": "1"
   },
   "boundary": {
    "0|1,4": "-1",
    "0|2,4": "-1",
    "0|3,4": "-1",
    "0|4,5": "-1",
    "0|4,6": "-1",
    "0|1,2,4": "-1",
    "0|1,3,4": "-1",
    "0|1,4,5": "-1",
    "0|1,4,6": "-1",
    "0|2,3,4": "-1",
    "0|2,4,5": "-1",
    "0|2,4,6": "-1",
    "0|3,4,5": "-1",
    "0|3,4,6": "-1",
    "0|4,5,6": "-1",
    "0|1,2,3,4": "-1",
    "0|1,2,4,5": "-1",
    "0|1,2,4,6": "-1",
    "0|1,3,4,5": "-1",
    "0|1,3,4,6": "-1",
    "0|1,4,5,6": "-1",
    "0|2,3,4,5": "-1",
    "0|2,3,4,6": "-1",
    "0|2,4,5,6": "-1",
    "0|3,4,5,6": "-1",
    "0|1,2,3,4,5": "-1",
    "0|1,2,3,4,6": "-1",
    "0|1,2,4,5,6": "-1",
    "0|1,3,4,5,6": "-1",
    "0|2,3,4,5,6": "-1",
    "0|1,2,3,4,5,6": "-1"
   }
  },
  {
   "g": 1,
   "n": 6,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "5": "1"
   },
   "boundary": {
    "0|1,5": "-1",
    "0|2,5": "-1",
    "0|3,5": "-1",
    "0|4,5": "-1",
    "0|5,6": "-1",
    "0|1,2,5": "-1",
    "0|1,3,5": "-1",
    "0|1,4,5": "-1",
    "0|1,5,6": "-1",
    "0|2,3,5": "-1",
    "0|2,4,5": "-1",
    "0|2,5,6": "-1",
    "0|3,4,5": "-1",
    "0|3,5,6": "-1",
    "0|4,5,6": "-1",
    "0|1,2,3,5": "-1",
    "0|1,2,4,5": "-1",
    "0|1,2,5,6": "-1",
    "0|1,3,4,5": "-1",
    "0|1,3,5,6": "-1",
    "0|1,4,5,6": "-1",
    "0|2,3,4,5": "-1",
    "0|2,3,5,6": "-1",
    "0|2,4,5,6": "-1",
    "0|3,4,5,6": "-1",
    "0|1,2,3,4,5": "-1",
    "0|1,2,3,5,6": "-1",
    "0|1,2,4,5,6": "-1",
    "0|1,3,4,5,6": "-1",
    "0|2,3,4,5,6": "-1",
    "0|1,2,3,4,5,6": "-1"
   }
  },
  {
   "g": 1,
   "n": 6,
   "lambda": "0",
   "delta_irr": "-1/12",
   "psi": {
    "6": "1"
   },
   "boundary": {
    "0|1,6": "-1",
    "0|2,6": "-1",
    "0|3,6": "-1",
    "0|4,6": "-1",
    "0|5,6": "-1",
    "0|1,2,6": "-1",
    "0|1,3,6": "-1",
    "0|1,4,6": "-1",
    "0|1,5,6": "-1",
    "0|2,3,6": "-1",
    "0|2,4,6": "-1",
    "0|2,5,6": "-1",
    "0|3,4,6": "-1",
    "0|3,5,6": "-1",
    "0|4,5,6": "-1",
    "0|1,2,3,6": "-1",
    "0|1,2,4,6": "-1",
    "0|1,2,5,6": "-1",
    "0|1,3,4,6": "-1",
    "0|1,3,5,6": "-1",
    "0|1,4,5,6": "-1",
    "0|2,3,4,6": "-1",
    "0|2,3,5,6": "-1",
    "0|2,4,5,6": "-1",
    "0|3,4,5,6": "-1",
    "0|1,2,3,4,6": "-1",
    "0|1,2,3,5,6": "-1",
    "0|1,2,4,5,6": "-1",
    "0|1,3,4,5,6": "-1",
    "0|2,3,4,5,6": "-1",
    "0|1,2,3,4,5,6": "-1"
   }
  }
 ]
}
)relations";

std::vector<DivisorClass> load_and_validate(int n) {
    const Json all = Json::parse(kGenus1RelationData);
    const std::string key = std::to_string(n);
    if (!all.contains(key)) throw InvalidSignature("no genus-1 relation table for n=" + key);

    std::vector<DivisorClass> rows;
    for (const auto& entry : all[key]) rows.push_back(divisor_from_json(entry));

    const size_t expected = n == 1 ? 1 : static_cast<size_t>(n) + 1;
    if (rows.size() != expected) throw ParseError("genus-1 relation table has the wrong number of rows");
    const ModuliSig sig{1, n};
    QMat mat(ClassBasis::of(sig).dim());
    for (const auto& row : rows) {
        if (row.sig != sig) throw ParseError("genus-1 relation row has the wrong signature");
        mat.add_row(row.bvec());
    }
    if (rank(mat) != rows.size()) throw ParseError("genus-1 relation rows are not independent");
    for (const auto& x : enumerate_strata(sig)) {
        const LinearFunctional f = stratum_functional(x);
        for (const auto& row : rows)
            if (f.eval(row) != 0)
                throw ParseError("genus-1 relation row fails annihilation against " + x.str());
    }
    if (rows[0].coeff(ClassIndex::lambda()) != 1) throw ParseError("row 0 must carry lambda");
    for (size_t k = 1; k < rows.size(); ++k)
        if (rows[k].coeff(ClassIndex::psi(static_cast<int>(k))) != 1 ||
            rows[k].coeff(ClassIndex::lambda()) != 0)
            throw ParseError("row " + std::to_string(k) + " must carry psi alone");
    return rows;
}

}  // namespace

const std::vector<DivisorClass>& g1_relation_table(int n) {
    if (n < 1 || n > 6) throw InvalidSignature("genus-1 relation table covers 1 <= n <= 6");
    static std::map<int, std::vector<DivisorClass>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, load_and_validate(n)).first;
    return it->second;
}

}  // namespace fabercone
