#pragma once

#include <string>

namespace imgql {

// Types of expression results: Number, Bool, String, Model, and Valuation(t),
// the type of an image whose voxels hold a value of type t.
struct ValueType {
    enum class Base { Number, Bool, String, Model };

    Base base = Base::Number;
    int valuation_depth = 0; // 0 for scalars, 1 for Valuation(t), ...

    bool operator==(const ValueType&) const = default;

    static ValueType number() { return {Base::Number, 0}; }
    static ValueType boolean() { return {Base::Bool, 0}; }
    static ValueType string() { return {Base::String, 0}; }
    static ValueType model() { return {Base::Model, 0}; }
    static ValueType valuation(ValueType inner) {
        inner.valuation_depth += 1;
        return inner;
    }

    bool is_valuation() const { return valuation_depth > 0; }
    std::string str() const;
};

inline const ValueType kNumber = ValueType::number();
inline const ValueType kBool = ValueType::boolean();
inline const ValueType kModel = ValueType::model();
inline const ValueType kNumberField = ValueType::valuation(ValueType::number());
inline const ValueType kBoolField = ValueType::valuation(ValueType::boolean());

} // namespace imgql
