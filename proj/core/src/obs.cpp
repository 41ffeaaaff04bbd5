#include "rbisim/obs.hpp"

namespace rbisim {

std::string Obs::to_string() const {
  switch (kind) {
    case Kind::Unit:
      return "unit";
    case Kind::Address:
      return "addr:" + std::to_string(value);
    case Kind::Branch:
      return value ? "branch:true" : "branch:false";
    case Kind::Cache: {
      std::string s = "cache:[";
      for (std::size_t i = 0; i < cache.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cache[i]);
      }
      s += ']';
      return s;
    }
    case Kind::Halt:
      return "halt";
    case Kind::Named:
      return "obs:" + name;
  }
  return "?";
}

}  // namespace rbisim
