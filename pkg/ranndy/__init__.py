"""ranndy: descomposiciones espectrales de operadores de transferencia con redes aleatorias.

Los pesos ocultos se muestrean una sola vez; solo las escalas ω del diccionario
se optimizan (ascenso por gradiente sobre la traza del operador proyectado) y la
capa de salida se obtiene en forma cerrada.
"""

__version__ = "0.1.0"
