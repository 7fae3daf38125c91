"""
exceptions.py - Jerarquía de excepciones personalizadas para el proyecto

Proporciona excepciones específicas con mensajes descriptivos y acciones sugeridas
para facilitar el diagnóstico de problemas en el motor numérico, la carga de datos,
el entrenamiento y los checkpoints.
"""


class HBGNNError(Exception):
    """
    Clase base para todas las excepciones del proyecto.

    Attributes:
        message (str): Mensaje descriptivo del error
        suggested_action (str): Acción sugerida para resolver el problema
        original_error (Exception): Excepción original si existe
    """

    def __init__(self, message, suggested_action=None, original_error=None):
        """
        Inicializa la excepción.

        Args:
            message (str): Mensaje descriptivo del error
            suggested_action (str, optional): Acción sugerida para el usuario
            original_error (Exception, optional): Excepción original que causó este error
        """
        self.message = message
        self.suggested_action = suggested_action or "Revise los argumentos de la operación."
        self.original_error = original_error

        full_message = f"{message}\n\nAcción sugerida: {self.suggested_action}"
        if original_error:
            full_message += f"\n\nError original: {str(original_error)}"

        super().__init__(full_message)

    def get_user_message(self):
        """Retorna un mensaje de una sola línea para la consola"""
        return " ".join(self.message.split())

    def get_technical_details(self):
        """Retorna detalles técnicos para logging/debugging"""
        details = f"Error: {self.__class__.__name__}\n"
        details += f"Mensaje: {self.message}\n"
        if self.original_error:
            details += f"Error original: {type(self.original_error).__name__}: {str(self.original_error)}"
        return details


class DimensionError(HBGNNError):
    """
    Error de dimensiones entre operandos.

    Se lanza cuando dos tensores no tienen formas compatibles para una operación
    (producto matricial, operaciones elemento a elemento, capas, codificadores).
    """

    def __init__(self, operation, *shapes, reason=None):
        """
        Args:
            operation (str): Operación que detectó el problema
            *shapes: Formas involucradas (se incluyen todas en el mensaje)
            reason (str, optional): Detalle adicional
        """
        self.operation = operation
        self.shapes = tuple(tuple(s) for s in shapes)

        shapes_text = " vs ".join(str(list(s)) for s in self.shapes)
        message = f"Dimensiones incompatibles en {operation}: {shapes_text}"
        if reason:
            message += f" ({reason})"

        super().__init__(message, "Verifique las dimensiones configuradas (link_dim, place_dim, anchos del MLP).")


class DomainError(HBGNNError):
    """
    Error de dominio: el argumento está fuera del rango en el que la operación está definida.

    Ejemplos: softmax de un vector vacío, RMSE con n = 0, fold fuera de 1..5.
    """

    def __init__(self, operation, reason=None):
        self.operation = operation

        message = f"Argumento fuera de dominio en {operation}"
        if reason:
            message += f": {reason}"

        super().__init__(message, "Verifique que los argumentos no estén vacíos y estén en rango.")


class ContractError(HBGNNError):
    """
    Violación de contrato entre componentes.

    Se lanza cuando una precondición de la operación no se cumple, por ejemplo
    un backward desde un tensor no escalar, o vocabularios distintos entre
    modelo y dataset.
    """

    def __init__(self, operation, reason=None, details=None):
        """
        Args:
            operation (str): Operación cuyo contrato se violó
            reason (str, optional): Razón del fallo
            details (list or str, optional): Detalles adicionales (ej: tensores afectados)
        """
        self.operation = operation
        self.details = details

        message = f"Contrato violado en {operation}"
        if reason:
            message += f": {reason}"
        if details:
            if isinstance(details, list):
                message += "\n\nDetalles:\n• " + "\n• ".join(str(d) for d in details)
            else:
                message += f"\n\nDetalles: {details}"

        super().__init__(message, "Revise que el modelo, el checkpoint y el dataset sean compatibles.")


class VocabularyError(HBGNNError):
    """
    Búsqueda fuera de vocabulario.

    Se lanza cuando un índice o token no existe en la tabla de embeddings
    o en el vocabulario correspondiente.
    """

    def __init__(self, table, key, size=None):
        """
        Args:
            table (str): Nombre de la tabla o vocabulario
            key: Índice o token no resuelto
            size (int, optional): Tamaño del vocabulario
        """
        self.table = table
        self.key = key
        self.size = size

        message = f"Valor fuera de vocabulario en la tabla '{table}': {key!r}"
        if size is not None:
            message += f" (tamaño {size})"

        super().__init__(message, "Construya los vocabularios sobre el dataset completo o use un checkpoint compatible.")


class ConstructionError(HBGNNError):
    """
    Error al construir una estructura (grafo, conjunto de parámetros, vocabulario).
    """

    def __init__(self, what, reason=None):
        self.what = what

        message = f"No se pudo construir {what}"
        if reason:
            message += f": {reason}"

        super().__init__(message, "Verifique nombres únicos y dimensiones consistentes.")


class ConfigurationError(HBGNNError):
    """
    Error de configuración.

    Se lanza cuando hay problemas con archivos de configuración o hiperparámetros.
    """

    def __init__(self, config_item, reason=None, original_error=None):
        """
        Args:
            config_item (str): Elemento de configuración problemático
            reason (str, optional): Razón del problema
            original_error (Exception, optional): Excepción original
        """
        self.config_item = config_item

        message = f"Error de configuración: {config_item}"
        if reason:
            message += f" ({reason})"

        suggested_action = (
            "Verifique que:\n"
            "• Las claves del archivo key=value existen en ModelConfig/TrainRunConfig\n"
            "• Los valores tienen el tipo esperado\n"
            "• β₁ y β₂ están en el intervalo (0, 1)"
        )

        super().__init__(message, suggested_action, original_error)


class DataLoadError(HBGNNError):
    """
    Error al cargar datos desde los archivos de MovieLens.

    Se lanza cuando hay problemas leyendo un archivo: no existe, no se puede leer,
    o contiene una línea mal formada (se reporta el número de línea).
    """

    def __init__(self, file_path, reason=None, line_number=None, original_error=None):
        """
        Args:
            file_path (str): Ruta del archivo que causó el error
            reason (str, optional): Razón específica del error
            line_number (int, optional): Línea (1-based) mal formada
            original_error (Exception, optional): Excepción original
        """
        self.file_path = str(file_path)
        self.line_number = line_number

        message = f"No se pudo cargar el archivo de datos {self.file_path}"
        if line_number is not None:
            message += f" (línea {line_number})"
        if reason:
            message += f": {reason}"

        suggested_action = (
            "Verifique que:\n"
            "• El directorio contiene la distribución de MovieLens sin modificar\n"
            "• El tipo de dataset (ml100k / ml1m) corresponde al directorio\n"
            "• Tiene permisos para leer los archivos"
        )

        super().__init__(message, suggested_action, original_error)


class DataValidationError(HBGNNError):
    """
    Error de validación de datos.

    Se lanza cuando los datos cargados no cumplen con el esquema esperado
    (ratings fuera de 1..5, tokens sin vocabulario, etc.).
    """

    def __init__(self, validation_issue, details=None, original_error=None):
        self.validation_issue = validation_issue
        self.details = details

        message = f"Error de validación de datos: {validation_issue}"

        if details:
            if isinstance(details, list):
                message += "\n\nDetalles:\n• " + "\n• ".join(details)
            else:
                message += f"\n\nDetalles: {details}"

        super().__init__(message, "Verifique que los archivos del dataset no estén corruptos.", original_error)


class CheckpointError(HBGNNError):
    """Clase base para errores de checkpoint"""

    def __init__(self, path, reason=None, original_error=None):
        self.path = str(path)

        message = f"Checkpoint inválido {self.path}"
        if reason:
            message += f": {reason}"

        super().__init__(message, "Regenere el checkpoint con esta versión del proyecto.", original_error)


class CheckpointFormatError(CheckpointError):
    """Versión o cabecera de checkpoint no reconocida"""


class CheckpointIntegrityError(CheckpointError):
    """Checkpoint truncado o con checksum inválido"""
