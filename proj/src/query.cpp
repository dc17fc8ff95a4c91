#include "defectont/model.hpp"
