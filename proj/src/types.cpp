#include "imgql/types.hpp"

namespace imgql {

std::string ValueType::str() const {
    std::string inner;
    switch (base) {
        case Base::Number: inner = "Number"; break;
        case Base::Bool: inner = "Bool"; break;
        case Base::String: inner = "String"; break;
        case Base::Model: inner = "Model"; break;
    }
    for (int i = 0; i < valuation_depth; ++i) inner = "Valuation(" + inner + ")";
    return inner;
}

} // namespace imgql
